/* Merges two agents' beliefs into Horn and prints the result. */
#include <stdio.h>
#include "fragmerge.h"

#define CHECK(call)                                                      \
    do {                                                                 \
        if ((call) != FM_OK) {                                           \
            fprintf(stderr, "%s: %s\n", #call, fm_last_error_message()); \
            return 1;                                                    \
        }                                                                \
    } while (0)

int main(void) {
    FmUniverse *u;
    FmModelSet *k1, *k2, *mu, *out;
    FmProfile *e;
    char *text, *phi;

    CHECK(fm_universe_new("a b", &u));
    CHECK(fm_formula_models(u, "a", &k1));
    CHECK(fm_formula_models(u, "b", &k2));
    CHECK(fm_formula_models(u, "!a | !b", &mu));
    CHECK(fm_profile_new(u, &e));
    CHECK(fm_profile_push(e, k1));
    CHECK(fm_profile_push(e, k2));
    CHECK(fm_merge(e, mu, FM_HAMMING, FM_SUM, FM_CLOSURE, FM_HORN, &out));
    CHECK(fm_model_set_to_string(out, &text));
    CHECK(fm_synthesize(out, FM_HORN, &phi));
    printf("%s\n%s\n", text, phi);

    if (fm_formula_models(u, "a &", &k1) != FM_SYNTAX) {
        return 1;
    }
    fm_string_free(text);
    fm_string_free(phi);
    fm_model_set_free(out);
    fm_model_set_free(mu);
    fm_model_set_free(k2);
    fm_model_set_free(k1);
    fm_profile_free(e);
    fm_universe_free(u);
    return 0;
}
