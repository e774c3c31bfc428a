#!/usr/bin/env python3
"""Writes the ordinates of the first N nontrivial zeta zeros using mpmath.

Ordinates up to --direct are taken from mpmath.zetazero. Above that, sign
changes of a double precision Riemann-Siegel Z on a fine grid give brackets,
each root is polished with mpmath.siegelz, and mpmath.nzeros confirms the
running count at checkpoints so no close pair is skipped.
"""
import argparse
import math
import sys

import mpmath
import numpy as np
from scipy.optimize import brentq

TWO_PI = 2.0 * math.pi


def theta(t):
    return (t / 2) * np.log(t / TWO_PI) - t / 2 - math.pi / 8 + 1 / (48 * t) + 7 / (5760 * t**3)


def z_rs(t):
    """Riemann-Siegel Z with the first correction term, vectorized."""
    a = np.sqrt(t / TWO_PI)
    n_max = int(a.max())
    N = np.floor(a)
    th = theta(t)
    z = np.zeros_like(t)
    for n in range(1, n_max + 1):
        z += np.where(n <= N, np.cos(th - t * math.log(n)) / math.sqrt(n), 0.0)
    z *= 2
    p = a - N
    c0 = np.cos(TWO_PI * (p * p - p - 1 / 16)) / np.cos(TWO_PI * p)
    sign = np.where(N % 2 == 1, 1.0, -1.0)
    return z + sign * a**-0.5 * c0


def polish(lo, hi):
    a, b = mpmath.mpf(lo), mpmath.mpf(hi)
    fa, fb = mpmath.siegelz(a), mpmath.siegelz(b)
    if fa * fb > 0:
        return None
    eps = b * mpmath.mpf(10) ** (-mpmath.mp.dps + 3)
    for _ in range(100):
        c = b - fb * (b - a) / (fb - fa)
        fc = mpmath.siegelz(c)
        if fc == 0 or abs(c - b) < eps:
            return c
        if fc * fb < 0:
            a, fa = b, fb
        else:
            fa /= 2
        b, fb = c, fc
    return b


def polish_near(lo, hi, reach):
    """Secant iteration on mpmath.siegelz from the double precision root.

    Falls back to the bracketed iteration if the secant wanders off.
    """
    f = lambda x: z_rs(np.array([x]))[0]
    x0 = mpmath.mpf(brentq(f, lo, hi, xtol=1e-13))
    x1 = x0 + mpmath.mpf(1e-6)
    f0, f1 = mpmath.siegelz(x0), mpmath.siegelz(x1)
    eps = x0 * mpmath.mpf(10) ** (-mpmath.mp.dps + 3)
    for _ in range(20):
        if f1 == f0:
            break
        x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
        if abs(x2 - x1) < eps:
            if lo - reach <= x2 <= hi + reach:
                return x2
            break
        x0, f0 = x1, f1
        x1, f1 = x2, mpmath.siegelz(x2)
    return polish(lo, hi)


def grid_zeros(t_lo, t_hi, step):
    ts = np.arange(t_lo, t_hi + step, step)
    zs = z_rs(ts)
    idx = np.nonzero(np.sign(zs[:-1]) != np.sign(zs[1:]))[0]
    return [(ts[i], ts[i + 1]) for i in idx], ts[-1]


def fmt(x):
    return mpmath.nstr(x, 15, strip_zeros=False, min_fixed=-1, max_fixed=10)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=10000)
    parser.add_argument("--out", default="-")
    parser.add_argument("--dps", type=int, default=20)
    parser.add_argument("--direct", type=int, default=100, help="zeros taken from mpmath.zetazero")
    parser.add_argument("--step", type=float, default=0.01)
    parser.add_argument("--checkpoint", type=int, default=100)
    args = parser.parse_args()
    mpmath.mp.dps = args.dps

    ordinates = [mpmath.zetazero(n).imag for n in range(1, min(args.direct, args.count) + 1)]
    t = float(ordinates[-1]) + args.step / 2
    while len(ordinates) < args.count:
        t_hi = t + 200.0
        batch, last = grid_zeros(t, t_hi, args.step)
        for lo, hi in batch:
            root = polish_near(lo, hi, 3 * args.step)
            # The double precision Z is only good to about 1e-4, so a sign
            # change can land a grid step away from the true one, or be
            # spurious. Widen, drop duplicates, and let the count check
            # below catch anything genuinely missed.
            for k in (1, 2, 3):
                if root is not None:
                    break
                root = polish(lo - k * args.step, hi + k * args.step)
            if root is None or any(abs(root - g) < 1e-8 for g in ordinates[-3:]):
                continue
            ordinates.append(root)
            ordinates[-3:] = sorted(ordinates[-3:])
            n = len(ordinates)
            if n % args.checkpoint == 0 or n == args.count:
                probe = (root + mpmath.mpf(hi)) / 2
                if mpmath.nzeros(probe) != n:
                    sys.exit("count mismatch below t = %s: found %d, nzeros %d" % (probe, n, mpmath.nzeros(probe)))
                print("%d zeros, t = %s" % (n, fmt(root)), file=sys.stderr, flush=True)
            if n == args.count:
                break
        t = last

    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="\n")
    out.write("# ordinates of the first %d nontrivial zeros of zeta(s)\n" % args.count)
    out.write("# generated by tools/gen_zeros.py (mpmath %s, dps=%d)\n" % (mpmath.__version__, args.dps))
    for g in ordinates:
        out.write(fmt(g) + "\n")
    out.close()


if __name__ == "__main__":
    main()
