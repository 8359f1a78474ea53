#include <stdio.h>
#include <string.h>
#include "equicoh.h"

int main(void) {
    EquicohAlgebra *g = NULL;
    char *err = NULL;
    if (equicoh_algebra_new("\"su2\"", &g, &err) != EQUICOH_STATUS_OK) return 10;
    size_t dims[8];
    size_t len = 0;
    if (equicoh_algebra_cohomology(g, dims, 8, &len) != EQUICOH_STATUS_OK) return 11;
    equicoh_algebra_free(g);
    if (len != 4 || dims[0] != 1 || dims[1] != 0 || dims[2] != 0 || dims[3] != 1) return 12;

    EquicohReport *r = NULL;
    if (equicoh_example("poiss3", NULL, &r, &err) != EQUICOH_STATUS_OK) return 13;
    char *csv = equicoh_report_render(r, EQUICOH_FORMAT_CSV);
    if (strncmp(csv, "table,r,p,q,dim\n", 16) != 0) return 14;
    equicoh_string_free(csv);
    equicoh_report_free(r);

    if (equicoh_compute("{", &r, &err) != EQUICOH_STATUS_SCHEMA) return 15;
    if (strstr(err, "\"schema\"") == NULL) return 16;
    equicoh_string_free(err);
    printf("%s\n", equicoh_version());
    return 0;
}
