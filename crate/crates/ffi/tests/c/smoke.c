#include <stdio.h>
#include <string.h>

#include "irrchain.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__,   \
                    #cond, irr_last_error());                         \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    IrrPoly *g = NULL, *r = NULL;
    char *text = NULL;
    int64_t degree = 0;
    bool irreducible = false;

    CHECK(irr_poly_parse("5;3,1", &g) == IRR_STATUS_OK);
    CHECK(irr_cohen_r(g, &r) == IRR_STATUS_OK);
    CHECK(irr_poly_format(r, &text) == IRR_STATUS_OK);
    CHECK(strcmp(text, "5;1,1,1") == 0);
    irr_string_free(text);
    CHECK(irr_poly_degree(r, &degree) == IRR_STATUS_OK && degree == 2);
    CHECK(irr_poly_is_irreducible(r, &irreducible) == IRR_STATUS_OK && irreducible);
    irr_poly_free(r);
    irr_poly_free(g);

    CHECK(irr_poly_parse("5;4,1", &g) == IRR_STATUS_OK);
    CHECK(irr_r_sigma_t(g, "1,1;1,-1", 2, &r) == IRR_STATUS_POLE);
    CHECK(strlen(irr_last_error()) > 0);
    irr_poly_free(g);

    puts("ok");
    return 0;
}
