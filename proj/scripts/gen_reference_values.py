#!/usr/bin/env python3
"""Regenerates the high-precision reference values frozen into the test suite.

Everything is computed with mpmath at 40 significant digits and printed with
enough digits to round-trip through IEEE doubles (and the long-double oracle
in the acceptance gate). Run from anywhere; output is plain text.
"""

import mpmath as mp

mp.mp.dps = 40


def fresnel_F(Z):
    """Exponential Fresnel integral: integral of exp(i t^2) from 0 to Z."""
    f = lambda t: mp.e ** (1j * t * t)
    return mp.quad(f, [0, Z])


def fmt(x, digits=21):
    return mp.nstr(x, digits, strip_zeros=False)


def show_c(name, Z):
    v = fresnel_F(Z)
    print(f"F({name}) = {fmt(v.real)} {'+' if v.imag >= 0 else '-'} {fmt(abs(v.imag))} i")


def main():
    print("# Fresnel integral F(Z) = int_0^Z exp(i t^2) dt")
    for z in ["1", "1.7", "2.5", "2.8", "3.2", "4.0", "5.2", "5.5", "5.8",
              "7.5", "9.7", "10"]:
        show_c(z, mp.mpf(z))
    print("F(inf) =", fmt(mp.sqrt(mp.pi / 8)))
    for r in ["3", "3.5", "4.6", "5"]:
        show_c(f"{r}*e^(i pi/4)", mp.mpf(r) * mp.e ** (1j * mp.pi / 4))
    show_c("7.2*e^(i pi/8)", mp.mpf("7.2") * mp.e ** (1j * mp.pi / 8))
    show_c("2+0.5i", mp.mpc(2, "0.5"))
    show_c("2.8+1.1i", mp.mpc("2.8", "1.1"))

    print()
    print("# Stationary point of |F|^2 on the positive real axis:")
    print("# smallest positive root of C(Z) cos(Z^2) + S(Z) sin(Z^2) = 0")
    g = lambda Z: (mp.re(fresnel_F(Z)) * mp.cos(Z * Z)
                   + mp.im(fresnel_F(Z)) * mp.sin(Z * Z))
    Zstar = mp.findroot(g, mp.mpf("1.5"))
    print("Z* =", fmt(Zstar))
    print("1/(8 Z*^2) =", fmt(1 / (8 * Zstar * Zstar)))
    print("|F(Z*)|^2 =", fmt(abs(fresnel_F(Zstar)) ** 2))

    print()
    print("# Airy Ai and Ai'")
    for x in ["0", "1", "4.5", "-4.5", "5", "5.01", "7", "11.9", "14.2", "25",
              "30", "-14.5", "-20", "-25.3"]:
        a = mp.airyai(mp.mpf(x))
        ap = mp.airyai(mp.mpf(x), 1)
        print(f"Ai({x}) = {fmt(a)}   Ai'({x}) = {fmt(ap)}")

    print()
    print("# Negative zeros of Ai")
    for n in list(range(1, 11)) + [15, 20]:
        print(f"a_{n} =", fmt(mp.airyaizero(n)))

    print()
    print("# Ground level of the linear-potential well with a hard floor,")
    print("# hbar = m = F = 1: E_n = -a_n * (1/2)^(1/3); plus two closed-form")
    print("# variants of the same spectrum and their ratios.")
    E1_exact = -mp.airyaizero(1) * mp.mpf(2) ** mp.mpf("-1/3")
    E1_text = (3 * mp.pi / 2 * (1 - mp.mpf("0.25"))) ** mp.mpf("2/3") * mp.mpf(2) ** mp.mpf("-1/3")
    E1_alt = (3 * mp.pi / 8 * (1 - mp.mpf("0.25"))) ** mp.mpf("2/3")
    print("E1_exact =", fmt(E1_exact))
    print("E1_textbook =", fmt(E1_text))
    print("E1_compact =", fmt(E1_alt))
    print("E1_exact/E1_compact =", fmt(E1_exact / E1_alt))
    w21 = (3 * mp.pi / 8) ** mp.mpf("2/3") * (mp.mpf("1.75") ** mp.mpf("2/3")
                                              - mp.mpf("0.75") ** mp.mpf("2/3"))
    print("omega21_compact =", fmt(w21))
    w21_exact = (-mp.airyaizero(2) + mp.airyaizero(1)) * mp.mpf(2) ** mp.mpf("-1/3")
    print("omega21_exact =", fmt(w21_exact))

    print()
    print("# SI cross-checks")
    hbar = mp.mpf("1.054571817e-34")
    eV = mp.mpf("1.602176634e-19")
    m_n = mp.mpf("1.67492750e-27")
    g = mp.mpf("9.80665")
    v = mp.sqrt(2 * mp.mpf("3.00e-7") * eV / m_n)
    print("neutron v(3e-7 eV) =", fmt(v), "m/s")
    A = mp.mpf("1e-4")
    print("neutron interferometer phase m*F*A/hbar^2 =",
          fmt(m_n * (m_n * g) * A / hbar ** 2), "rad")

    print()
    print("# Quasi-time spot checks, model units E=2, F=5, m=hbar=1")
    E, F = mp.mpf(2), mp.mpf(5)
    tau = lambda z: mp.sqrt(2) / F * (mp.sqrt(E - F * z) - mp.sqrt(E))
    ztau = lambda t: -mp.sqrt(2 * E) * t - F * t * t / 2
    print("z(tau=0.055) =", fmt(ztau(mp.mpf("0.055"))))
    print("tau(z=-0.117556) =", fmt(tau(mp.mpf("-0.117556"))))


if __name__ == "__main__":
    main()
