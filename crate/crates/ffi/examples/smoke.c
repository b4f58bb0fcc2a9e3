/* Prints Delta_2(n) for n <= 8 and the eigenvalue of q psi(q)^8 under T(3). */
#include <stdio.h>
#include "qdiamond.h"

static int fail(QdStatus st) {
    char msg[256];
    qd_last_error_message(msg, sizeof msg);
    fprintf(stderr, "status %d: %s\n", (int)st, msg);
    return 1;
}

int main(void) {
    QdSeries *d = NULL, *f = NULL;
    char buf[64];
    uintptr_t needed = 0;
    QdStatus st = qd_series_broken_diamond(2, 8, 0, &d);
    if (st != QD_STATUS_OK) return fail(st);
    for (uintptr_t n = 0; n <= 8; n++) {
        st = qd_series_coeff_string(d, n, buf, sizeof buf, &needed);
        if (st != QD_STATUS_OK) return fail(st);
        printf("%s%s", n ? "," : "", buf);
    }
    printf("\n");
    qd_series_free(d);

    st = qd_series_expand("q * psi(1)^8", 200, 0, &f);
    if (st != QD_STATUS_OK) return fail(st);
    bool eigen = false;
    uintptr_t idx = 0;
    st = qd_eigen_check(f, 3, 4, 0, &eigen, &idx, buf, sizeof buf, &needed);
    if (st != QD_STATUS_OK || !eigen) return fail(st);
    printf("%s\n", buf);
    qd_series_free(f);

    st = qd_series_broken_diamond(2, 10, 1, &d);
    printf("%d\n", (int)st);
    return 0;
}
