"""Independent oracle for the frozen expected values in tests/support/oracle_values.hpp.

Builds the 8x8 block directly from the rate equations (no shared code with the
C++ library) and evaluates exp(M tau) with scipy's Pade scaling-and-squaring.
Run:  python3 tests/oracle/freeze_values.py > tests/support/oracle_values.hpp
"""
import numpy as np
import scipy.linalg as sl

G0 = 1.0
GS, GP = G0 / 6, G0 / 12
GT = GS + GP


def block8(W, D):
    Wc = np.conj(W)
    M = np.zeros((8, 8), complex)
    # order: r11 r33 r13 r31 r22 r44 r24 r42
    M[0, 2], M[0, 3], M[0, 0] = 1j * Wc, -1j * W, -2 * GT
    M[1, 3], M[1, 2], M[1, 4], M[1, 0] = 1j * W, -1j * Wc, 2 * GS, 2 * GP
    M[2, 2], M[2, 0], M[2, 1] = -1j * D - GT, 1j * W, -1j * W
    M[3, 3], M[3, 0], M[3, 1] = 1j * D - GT, -1j * Wc, 1j * Wc
    M[4, 7], M[4, 6], M[4, 4] = 1j * W, -1j * Wc, -2 * GT
    M[5, 6], M[5, 7], M[5, 0], M[5, 4] = 1j * Wc, -1j * W, 2 * GS, 2 * GP
    M[6, 6], M[6, 4], M[6, 5] = -1j * D - GT, -1j * W, 1j * W
    M[7, 7], M[7, 4], M[7, 5] = 1j * D - GT, 1j * Wc, -1j * Wc
    return M


def rho11(W, D):
    return 0.5 * abs(W) ** 2 / (2 * abs(W) ** 2 + GT**2 + D**2)


POINTS = [(0.5, 0.0), (0.5, 0.5), (3.0, 0.0)]
TAUS = [0.5, 1.0, 2.0, 5.0, 10.0, 20.0]

rows = []
for W, D in POINTS:
    M = block8(W, D)
    r = rho11(W, D)
    for t in TAUS:
        f = sl.expm(M * t)
        f12, f52, f56, f16 = f[0, 1].real, f[4, 1].real, f[4, 5].real, f[0, 5].real
        F2, F6 = f12 + f52, f16 + f56
        g2v = (F2 + F6) * r
        g2n = (f12 + f56) * r
        rows.append((W, D, t, f12, f52, f56, F2, F6, g2v, g2n, g2v / (2 * r) ** 2, g2n / (2 * r * r)))

print("// Generated by tests/oracle/freeze_values.py (scipy expm on an independently")
print("// assembled 8x8 block). Do not edit by hand.")
print("#pragma once\n")
print("#include <array>\n")
print("namespace oracle {\n")
print("struct PropagatorSample {")
print("  double omega, delta, tau;")
print("  double f12, f52, f56, F2, F6;")
print("  double G2_vic, G2_novic, g2_vic, g2_novic;")
print("};\n")
print(f"inline constexpr std::array<PropagatorSample, {len(rows)}> kSamples{{{{")
for row in rows:
    print("    {" + ", ".join(repr(float(x)) for x in row) + "},")
print("}};\n")
print("}  // namespace oracle")
