#include <stdio.h>
#include <string.h>

#include "octoma.h"

static int fail(const char *what) {
    const char *e = octoma_last_error();
    fprintf(stderr, "%s: %s\n", what, e ? e : "(no message)");
    return 1;
}

int main(void) {
    OctomaOctonion e1 = {{0, 1, 0, 0, 0, 0, 0, 0}};
    OctomaOctonion sq = octoma_octonion_mul(e1, e1);
    if (sq.c[0] != -1.0) return fail("e1*e1");

    OctomaPoly *p = NULL;
    if (octoma_poly_parse("x1_0^2*x2_3 - 5*x2_7^3", &p) != OCTOMA_STATUS_OK) return fail("parse");
    OctomaHermPoly *h = NULL;
    if (octoma_poly_hessian(p, &h) != OCTOMA_STATUS_OK) return fail("hessian");
    bool closed = false;
    if (octoma_herm_poly_is_closed(h, &closed) != OCTOMA_STATUS_OK || !closed) return fail("closed");
    char *s = NULL;
    if (octoma_herm_poly_to_string(h, &s) != OCTOMA_STATUS_OK) return fail("to_string");
    if (strstr(s, "d1:") == NULL) return fail("herm text");
    octoma_string_free(s);
    octoma_herm_poly_free(h);
    octoma_poly_free(p);

    if (octoma_poly_parse("x1_0 +", &p) != OCTOMA_STATUS_PARSE) return fail("parse error expected");
    if (octoma_last_error() == NULL) return 1;

    OctomaMaConfig *cfg = NULL;
    const char *json = "{\"active_coords\": [\"x1_0\"], \"max_freq\": 2, \"f\": {\"trigpoly\": []}}";
    if (octoma_ma_config_parse(json, &cfg) != OCTOMA_STATUS_OK) return fail("config");
    if (octoma_ma_solve(cfg, &s) != OCTOMA_STATUS_OK) return fail("solve");
    if (strstr(s, "\"iterations\"") == NULL) return fail("report");
    octoma_string_free(s);
    octoma_ma_config_free(cfg);
    printf("ok %s\n", octoma_version());
    return 0;
}
