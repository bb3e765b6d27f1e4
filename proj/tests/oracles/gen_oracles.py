"""Regenerates frozen_oracles.hpp with mpmath + sympy (independent of the C++ code)."""
import math
import sys

import mpmath as mp
from sympy import factorint, primerange

mp.mp.dps = 70
D = 50

chi3 = [0, 1, -1]
chi4 = [0, 1, 0, -1]


def L(s, chi, deriv=0):
    return mp.dirichlet(s, chi, deriv)


def prime_zeta_prime(s, chi_odd, q):
    """-d/ds sum_{p nmid q} chi(p) p^-s via Mobius inversion of log L."""
    total = mp.mpf(0)
    k = 1
    while True:
        f = factorint(k)
        mu = 0 if any(e > 1 for e in f.values()) else (-1) ** len(f)
        if mu != 0:
            ks = k * s
            if chi_odd is None or k % 2 == 0:
                # principal character mod q: zeta(ks)(1 - q^-ks)
                val = mp.zeta(ks, derivative=1) / mp.zeta(ks)
                r = 2 if q == 4 else q  # the prime dividing q
                val += mp.log(r) * mp.power(r, -ks) / (1 - mp.power(r, -ks))
            else:
                val = L(ks, chi_odd, 1) / L(ks, chi_odd)
            total += mu * val
        if mp.power(2, -k * s) < mp.mpf(10) ** (-mp.mp.dps + 5):
            break
        k += 1
    return total  # = sum chi(p) log p p^-s (sign: -(-...))


def class_log_sum(s, q, a, chi):
    # sum_{p == a mod q} log p p^-s
    principal = -prime_zeta_prime(s, None, q)
    twisted = -prime_zeta_prime(s, chi, q)
    sign = 1 if a == 1 else -1
    return (principal + sign * twisted) / 2


def prime_sum(q, a, chi):
    total = mp.mpf(0)
    m = 1
    while True:
        term = class_log_sum(2 * m, q, a, chi)
        total += term
        if abs(term) < mp.mpf(10) ** (-D - 5):
            break
        m += 1
    return total


def drift(q, a, n_last, x_limit):
    s = mp.mpf(0)
    for p in primerange(2, n_last + 1):
        if p % q != a:
            continue
        pk = p
        while pk <= n_last:
            s += mp.log(p) / pk
            pk *= p
    return s - mp.log(x_limit) / 2


def fmt(x, digits=D):
    return mp.nstr(x, digits, strip_zeros=False, min_fixed=-30, max_fixed=30)


values = {
    "kPi": mp.pi,
    "kEulerGamma": mp.euler,
    "kZeta3": mp.zeta(3),
    "kZetaPrime2": mp.zeta(2, derivative=1),
    "kZeta5": mp.zeta(5),
    "kCatalan": mp.catalan,
    "kL2Chi3": L(2, chi3),
    "kL3Chi3": L(3, chi3),
    "kL1Chi3": L(1, chi3),
    "kL1Chi4": L(1, chi4),
    "kLPrime1Chi3": L(1, chi3, 1),
    "kLPrime1Chi4": L(1, chi4, 1),
    "kLPrime2Chi4": L(2, chi4, 1),
    "kLogDerivChi3": L(1, chi3, 1) / L(1, chi3),
    "kLogDerivChi4": L(1, chi4, 1) / L(1, chi4),
    "kAgm1Sqrt2": mp.agm(1, mp.sqrt(2)),
    "kGammaOneThird": mp.gamma(mp.mpf(1) / 3),
    "kGammaThreeQuarters": mp.gamma(mp.mpf(3) / 4),
    "kPrimeSum32": prime_sum(3, 2, chi3),
    "kPrimeSum43": prime_sum(4, 3, chi4),
    "kDriftG31At3121": drift(3, 1, 3121, 3163),
    "kDriftG41At197": drift(4, 1, 197, 229),
    "kGrhEnvelope224": mp.mpf(11) / (32 * mp.pi * mp.sqrt(224)) * (3 * mp.log(224) ** 2 + 8 * mp.log(224) + 16),
    "kIntegralTLog2_2_7": 1 / mp.log(2) - 1 / mp.log(7),
    "kSixOverPi2": 6 / mp.pi ** 2,
}

out = ["#pragma once", "", "// Generated by gen_oracles.py (mpmath " + mp.__version__ + ", dps 70). Do not edit.", "",
       "namespace oracle {", ""]
for k, v in values.items():
    out.append(f'inline constexpr const char* {k} = "{fmt(v)}";')
out += ["", "}  // namespace oracle", ""]
path = sys.argv[1] if len(sys.argv) > 1 else "frozen_oracles.hpp"
with open(path, "w") as f:
    f.write("\n".join(out))
print("\n".join(out))
