#!/usr/bin/env python3
"""Regenerates the checked-in oracle fixtures under crates/core/fixtures.

Every value here comes from mpmath at 50 significant digits and is
independent of the Rust implementation.  Run from the workspace root:

    python3 tools/oracle.py
"""
import csv
import os

import mpmath as mp

mp.mp.dps = 50
OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "fixtures")


def f17(x):
    return "%.17e" % float(x)


def special_corpus():
    zeta_pts = [
        (2, 0), (0, 0), (0.5, 0), (3, 4), (0.5, 20), (0.5, 100), (0.5, 500),
        (-2.5, 3), (-4, 10), (1.5, 0.1), (0.9, -0.2), (2, 30), (0.25, 50),
        (6, -7), (-0.5, 0), (0.5, 1000), (1.2, 250),
    ]
    xi_pts = [
        (0, 0), (1, 0), (0.5, 0), (0.3, 7), (2, 3), (0.5, 20), (-2, 5),
        (4, -1), (0.5, 40), (1, 0.05), (0.97, 0), (1.5, 25), (-4.5, 12),
        (5.5, -30), (0.1, 0.1),
    ]
    psi_pts = [
        (1, 0), (0.5, 0), (2.7, 1.3), (-2.5, 0.5), (0.1, 30), (10, -3),
        (0.25, 0.5), (100, 100), (-7.3, -1.1), (0.001, 0.001),
    ]
    lng_pts = [
        (3, 4), (0.5, 10), (25, -3), (0.1, 0.1), (1, 100), (-3.7, 0.2),
        (0.25, 250), (7.5, 0),
    ]

    def xi(s):
        if s == 0 or s == 1:
            return mp.mpf(1) / 2
        return s * (s - 1) / 2 * mp.power(mp.pi, -s / 2) * mp.gamma(s / 2) * mp.zeta(s)

    rows = []
    for name, pts, fn in [
        ("zeta", zeta_pts, mp.zeta),
        ("xi", xi_pts, xi),
        ("digamma", psi_pts, mp.digamma),
        ("log_gamma", lng_pts, mp.loggamma),
    ]:
        for re, im in pts:
            s = mp.mpc(re, im)
            v = fn(s)
            rows.append((re, im, name, f17(mp.re(v)), f17(mp.im(v))))
    with open(os.path.join(OUT, "special_oracle.csv"), "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["re_s", "im_s", "fn_name", "re_val", "im_val"])
        w.writerows(rows)
    print("special_oracle.csv:", len(rows), "rows")


def zeros():
    with open(os.path.join(OUT, "zeros_oracle.csv"), "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["index", "gamma"])
        for k in range(1, 101):
            w.writerow([k, mp.nstr(mp.im(mp.zetazero(k)), 20)])
    with open(os.path.join(OUT, "zero_counts.csv"), "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["height", "count"])
        for t in [10, 15, 50, 100, 500, 1000, 2000]:
            w.writerow([t, mp.nzeros(t)])
    # Z(0) = zeta(1/2), theta(0) = 0
    print("zeros: done")


def eta_by_contour(k):
    # eta_k = -[u^k] (zeta'/zeta(1+u) + 1/u), Cauchy integral on |u| = 1
    def g(theta):
        u = mp.expjpi(theta / mp.pi) if False else mp.exp(1j * theta)
        val = mp.zeta(1 + u, derivative=1) / mp.zeta(1 + u) + 1 / u
        return val * u ** (-k)
    c = mp.quad(g, [0, mp.pi / 2, mp.pi, 3 * mp.pi / 2, 2 * mp.pi]) / (2 * mp.pi)
    return -mp.re(c)


def stieltjes_and_eta():
    mp.mp.dps = 30
    etas = []
    with open(os.path.join(OUT, "stieltjes_oracle.csv"), "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["k", "gamma_k", "eta_k"])
        for k in range(0, 21):
            g = mp.stieltjes(k)
            e = eta_by_contour(k)
            etas.append(e)
            w.writerow([k, mp.nstr(g, 25), mp.nstr(e, 25)])
    print("stieltjes: done")
    return etas


def li_coefficients(etas):
    mp.mp.dps = 30
    g0 = mp.euler
    with open(os.path.join(OUT, "li_oracle.csv"), "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "lambda_n"])
        for n in range(1, 21):
            s1 = -mp.fsum(mp.binomial(n, j) * etas[j - 1] for j in range(1, n + 1))
            s3 = -mp.fsum(
                mp.binomial(n, j) * (-1) ** (j - 1) * (1 - mp.mpf(2) ** (-j)) * mp.zeta(j)
                for j in range(2, n + 1)
            )
            lam = s1 + 1 - (g0 + mp.log(4 * mp.pi)) * n / 2 + s3
            w.writerow([n, mp.nstr(lam, 22)])
    print("li: done")


def misc():
    mp.mp.dps = 30
    rows = [
        ("zeta_logderiv_2", mp.zeta(2, derivative=1) / mp.zeta(2)),
        ("zeta_logderiv_4", mp.zeta(4, derivative=1) / mp.zeta(4)),
        ("xi_logderiv_0", -(mp.euler / 2 + 1 - mp.log(4 * mp.pi) / 2)),
        ("xi_half", mp.mpf(1) / 8 * mp.power(mp.pi, -0.25) * mp.gamma(0.25) * (-1) * mp.zeta(0.5)),
        ("hardy_z_0", mp.siegelz(0)),
        ("hardy_z_25_3", mp.siegelz(25.3)),
        ("hardy_z_100", mp.siegelz(100)),
        ("chebyshev_psi_100", mp.fsum(mp.mangoldt(m) for m in range(1, 101))),
    ]
    with open(os.path.join(OUT, "misc_oracle.csv"), "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["name", "value"])
        for name, v in rows:
            w.writerow([name, mp.nstr(v, 22)])
    print("misc: done")


if __name__ == "__main__":
    special_corpus()
    zeros()
    misc()
    li_coefficients(stieltjes_and_eta())
