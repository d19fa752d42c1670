#!/usr/bin/env python3
"""Generate the shipped H2/STO-3G reference data files.

Computes one- and two-electron integrals for molecular hydrogen in the
minimal STO-3G basis at a given bond length, transforms them to the
symmetry-adapted molecular orbitals (sigma_g, sigma_u), expands to spin
orbitals (interleaved alpha,beta,alpha,beta), and writes:

  * an integral file (`norb 4`, `convention physicist`) where the
    two-body tensor pairs index-order with operator order,
      H = sum_pq h[p,q] a+_p a_q + 1/2 sum_pqrs g[p,q,r,s] a+_p a+_q a_r a_s + E_nuc
  * a qubit Hamiltonian file obtained from those integrals by a
    Jordan-Wigner transform (one Pauli term per line).

All electron integrals are evaluated with closed-form formulas for s-type
Gaussians (overlap, kinetic, nuclear attraction, repulsion via the Boys
function).  `--check` prints a comparison against the published values for
R = 1.4 bohr (Szabo & Ostlund, section 3.5.2) and verifies internal
consistency: the FCI energy from the generated tensors must match the
closed-form 2x2 CI result, and the Jordan-Wigner matrix must match a
direct occupation-number-basis construction.

Run from the repository root:

    python tools/generate_h2_integrals.py --distance 0.735 \
        --out-ints src/heabench/data/h2_sto3g.ints \
        --out-ham  src/heabench/data/h2_sto3g.ham --check
"""

from __future__ import annotations

import argparse
import math

import numpy as np

BOHR_PER_ANGSTROM = 1.0 / 0.529177210903

# STO-3G hydrogen 1s: exponents already scaled by zeta^2 (zeta = 1.24),
# contraction coefficients for unit-normalized primitives.
STO3G_EXPONENTS = np.array([3.42525091, 0.62391373, 0.16885540])
STO3G_COEFFS = np.array([0.15432897, 0.53532814, 0.44463454])


def boys_f0(x: float) -> float:
    if x < 1e-12:
        return 1.0 - x / 3.0
    return 0.5 * math.sqrt(math.pi / x) * math.erf(math.sqrt(x))


def prim_overlap(a, ra, b, rb):
    p = a + b
    mu = a * b / p
    r2 = np.dot(ra - rb, ra - rb)
    return (4.0 * a * b / p**2) ** 0.75 * math.exp(-mu * r2)


def prim_kinetic(a, ra, b, rb):
    p = a + b
    mu = a * b / p
    r2 = np.dot(ra - rb, ra - rb)
    return mu * (3.0 - 2.0 * mu * r2) * prim_overlap(a, ra, b, rb)


def prim_nuclear(a, ra, b, rb, rc, charge):
    p = a + b
    mu = a * b / p
    r2 = np.dot(ra - rb, ra - rb)
    rp = (a * ra + b * rb) / p
    norm = (4.0 * a * b / math.pi**2) ** 0.75
    k = math.exp(-mu * r2)
    rpc2 = np.dot(rp - rc, rp - rc)
    return -charge * (2.0 * math.pi / p) * norm * k * boys_f0(p * rpc2)


def prim_eri(a, ra, b, rb, c, rc, d, rd):
    """Chemist-notation (ab|cd) over unit-normalized s primitives."""
    p = a + b
    q = c + d
    rp = (a * ra + b * rb) / p
    rq = (c * rc + d * rd) / q
    k_ab = math.exp(-a * b / p * np.dot(ra - rb, ra - rb))
    k_cd = math.exp(-c * d / q * np.dot(rc - rd, rc - rd))
    norm = ((2 * a / math.pi) * (2 * b / math.pi) * (2 * c / math.pi) * (2 * d / math.pi)) ** 0.75
    rpq2 = np.dot(rp - rq, rp - rq)
    pref = 2.0 * math.pi**2.5 / (p * q * math.sqrt(p + q))
    return pref * norm * k_ab * k_cd * boys_f0(p * q / (p + q) * rpq2)


class ContractedS:
    """STO-3G contracted s function on one center, renormalized."""

    def __init__(self, center):
        self.center = np.asarray(center, dtype=float)
        self.exps = STO3G_EXPONENTS
        self.coeffs = STO3G_COEFFS.copy()
        self_overlap = sum(
            ci * cj * prim_overlap(ai, self.center, aj, self.center)
            for ai, ci in zip(self.exps, self.coeffs)
            for aj, cj in zip(self.exps, self.coeffs)
        )
        self.coeffs /= math.sqrt(self_overlap)


def contract2(fn, fa: ContractedS, fb: ContractedS, *args):
    return sum(
        ca * cb * fn(aa, fa.center, ab, fb.center, *args)
        for aa, ca in zip(fa.exps, fa.coeffs)
        for ab, cb in zip(fb.exps, fb.coeffs)
    )


def contract4(fa, fb, fc, fd):
    return sum(
        ca * cb * cc * cd * prim_eri(aa, fa.center, ab, fb.center, ac, fc.center, ad, fd.center)
        for aa, ca in zip(fa.exps, fa.coeffs)
        for ab, cb in zip(fb.exps, fb.coeffs)
        for ac, cc in zip(fc.exps, fc.coeffs)
        for ad, cd in zip(fd.exps, fd.coeffs)
    )


def ao_integrals(r_bohr: float):
    centers = [np.zeros(3), np.array([0.0, 0.0, r_bohr])]
    basis = [ContractedS(c) for c in centers]
    n = 2
    s = np.zeros((n, n))
    t = np.zeros((n, n))
    v = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            s[i, j] = contract2(prim_overlap, basis[i], basis[j])
            t[i, j] = contract2(prim_kinetic, basis[i], basis[j])
            for c in centers:
                v[i, j] += contract2(prim_nuclear, basis[i], basis[j], c, 1.0)
    eri = np.zeros((n, n, n, n))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    eri[i, j, k, l] = contract4(basis[i], basis[j], basis[k], basis[l])
    e_nuc = 1.0 / r_bohr
    return s, t, v, eri, e_nuc


def mo_integrals(r_bohr: float):
    s, t, v, eri, e_nuc = ao_integrals(r_bohr)
    s12 = s[0, 1]
    cg = 1.0 / math.sqrt(2.0 * (1.0 + s12))
    cu = 1.0 / math.sqrt(2.0 * (1.0 - s12))
    c = np.array([[cg, cu], [cg, -cu]])
    hcore = t + v
    h_mo = c.T @ hcore @ c
    eri_mo = np.einsum("pi,qj,rk,sl,pqrs->ijkl", c, c, c, c, eri, optimize=True)
    return h_mo, eri_mo, e_nuc, s12


def spin_orbital_tensors(h_mo, eri_mo):
    """Interleaved spin orbitals (0=g.a, 1=g.b, 2=u.a, 3=u.b).

    Two-body tensor is paired with operator order a+_p a+_q a_r a_s, i.e.
    g[p,q,r,s] = <pq|sr> = (p s | q r)_chemist * delta(sp,ss) * delta(sq,sr).
    """
    n = 4
    h = np.zeros((n, n))
    g = np.zeros((n, n, n, n))
    for p in range(n):
        for q in range(n):
            if p % 2 == q % 2:
                h[p, q] = h_mo[p // 2, q // 2]
    for p in range(n):
        for q in range(n):
            for r in range(n):
                for s in range(n):
                    if p % 2 == s % 2 and q % 2 == r % 2:
                        g[p, q, r, s] = eri_mo[p // 2, s // 2, q // 2, r // 2]
    return h, g


# --- independent occupation-number-basis check -------------------------------

def fermion_ladder(n_modes):
    dim = 1 << n_modes
    lowering = []
    for p in range(n_modes):
        m = np.zeros((dim, dim))
        mask = (1 << p) - 1
        for b in range(dim):
            if b & (1 << p):
                sign = -1.0 if bin(b & mask).count("1") % 2 else 1.0
                m[b ^ (1 << p), b] = sign
        lowering.append(m)
    return lowering


def dense_hamiltonian(h, g, e_nuc):
    n = h.shape[0]
    a = fermion_ladder(n)
    dim = 1 << n
    mat = e_nuc * np.eye(dim)
    for p in range(n):
        for q in range(n):
            if h[p, q] != 0.0:
                mat += h[p, q] * a[p].T @ a[q]
    for p in range(n):
        for q in range(n):
            for r in range(n):
                for s in range(n):
                    if g[p, q, r, s] != 0.0:
                        mat += 0.5 * g[p, q, r, s] * a[p].T @ a[q].T @ a[r] @ a[s]
    return mat


# --- minimal Jordan-Wigner for writing the reference Hamiltonian file --------

_PAULI_PROD = {
    ("I", "I"): ("I", 1), ("I", "X"): ("X", 1), ("I", "Y"): ("Y", 1), ("I", "Z"): ("Z", 1),
    ("X", "I"): ("X", 1), ("X", "X"): ("I", 1), ("X", "Y"): ("Z", 1j), ("X", "Z"): ("Y", -1j),
    ("Y", "I"): ("Y", 1), ("Y", "X"): ("Z", -1j), ("Y", "Y"): ("I", 1), ("Y", "Z"): ("X", 1j),
    ("Z", "I"): ("Z", 1), ("Z", "X"): ("Y", 1j), ("Z", "Y"): ("X", -1j), ("Z", "Z"): ("I", 1),
}


def _mul(a: str, b: str):
    phase = 1 + 0j
    out = []
    for x, y in zip(a, b):
        r, ph = _PAULI_PROD[(x, y)]
        out.append(r)
        phase *= ph
    return "".join(out), phase


def _op_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for sa, ca in a.items():
        for sb, cb in b.items():
            s, ph = _mul(sa, sb)
            out[s] = out.get(s, 0j) + ca * cb * ph
    return out


def _ladder_jw(p: int, n: int, dagger: bool) -> dict:
    x = "".join("Z" if k < p else ("X" if k == p else "I") for k in range(n))
    y = "".join("Z" if k < p else ("Y" if k == p else "I") for k in range(n))
    sign = -0.5j if dagger else 0.5j
    return {x: 0.5, y: sign}


def jordan_wigner_terms(h, g, e_nuc):
    n = h.shape[0]
    total: dict = {"I" * n: complex(e_nuc)}
    create = [_ladder_jw(p, n, True) for p in range(n)]
    destroy = [_ladder_jw(p, n, False) for p in range(n)]
    for p in range(n):
        for q in range(n):
            if h[p, q] == 0.0:
                continue
            for s, c in _op_mul(create[p], destroy[q]).items():
                total[s] = total.get(s, 0j) + h[p, q] * c
    for p in range(n):
        for q in range(n):
            for r in range(n):
                for s in range(n):
                    if g[p, q, r, s] == 0.0:
                        continue
                    op = _op_mul(_op_mul(create[p], create[q]), _op_mul(destroy[r], destroy[s]))
                    for st, c in op.items():
                        total[st] = total.get(st, 0j) + 0.5 * g[p, q, r, s] * c
    out = {}
    for s, c in total.items():
        assert abs(c.imag) < 1e-10, (s, c)
        if abs(c.real) > 1e-12:
            out[s] = c.real
    return out


_PAULI_MATS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli_terms_matrix(terms: dict) -> np.ndarray:
    n = len(next(iter(terms)))
    mat = np.zeros((1 << n, 1 << n), dtype=complex)
    for s, c in terms.items():
        # character k of the string is qubit k; qubit 0 is the least
        # significant bit, hence the last kron factor
        m = np.eye(1)
        for k in reversed(range(n)):
            m = np.kron(m, _PAULI_MATS[s[k]])
        mat += c * m
    return mat


def run_checks(distance: float):
    print("== cross-check against Szabo & Ostlund (R = 1.4 bohr, zeta = 1.24) ==")
    s, t, v, eri, _ = ao_integrals(1.4)
    rows = [
        ("S12", s[0, 1], 0.6593),
        ("T11", t[0, 0], 0.7600),
        ("T12", t[0, 1], 0.2365),
        ("(11|11)", eri[0, 0, 0, 0], 0.7746),
        ("(11|22)", eri[0, 0, 1, 1], 0.5697),
        ("(21|11)", eri[1, 0, 0, 0], 0.4441),
        ("(21|21)", eri[1, 0, 1, 0], 0.2970),
    ]
    for name, got, ref in rows:
        print(f"  {name:9s} computed {got: .4f}   published {ref: .4f}")
        assert abs(got - ref) < 2e-3, name

    print(f"== internal consistency at R = {distance} angstrom ==")
    r_bohr = distance * BOHR_PER_ANGSTROM
    h_mo, eri_mo, e_nuc, _ = mo_integrals(r_bohr)
    h, g, = spin_orbital_tensors(h_mo, eri_mo)
    dense = dense_hamiltonian(h, g, e_nuc)
    assert np.allclose(dense, dense.T, atol=1e-12)
    evals = np.linalg.eigvalsh(dense)

    h11 = 2 * h_mo[0, 0] + eri_mo[0, 0, 0, 0]
    h22 = 2 * h_mo[1, 1] + eri_mo[1, 1, 1, 1]
    k = eri_mo[0, 1, 0, 1]
    ci = e_nuc + 0.5 * (h11 + h22) - math.sqrt(0.25 * (h11 - h22) ** 2 + k * k)
    e_hf = e_nuc + h11
    print(f"  E(HF)  = {e_hf:.6f} Ha")
    print(f"  E(FCI) = {evals[0]:.6f} Ha   (2x2 CI closed form {ci:.6f})")
    assert abs(evals[0] - ci) < 1e-9

    jw = jordan_wigner_terms(h, g, e_nuc)
    jw_dense = pauli_terms_matrix(jw)
    assert np.allclose(jw_dense, dense, atol=1e-9), "JW does not match fermionic matrix"
    print(f"  Jordan-Wigner terms: {len(jw)}, matrix matches occupation-basis build")
    return h, g, e_nuc, jw, evals[0]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--distance", type=float, default=0.735, help="bond length in angstrom")
    ap.add_argument("--out-ints", default=None)
    ap.add_argument("--out-ham", default=None)
    ap.add_argument("--check", action="store_true")
    args = ap.parse_args()

    if args.check:
        h, g, e_nuc, jw, e0 = run_checks(args.distance)
    else:
        r_bohr = args.distance * BOHR_PER_ANGSTROM
        h_mo, eri_mo, e_nuc, _ = mo_integrals(r_bohr)
        h, g = spin_orbital_tensors(h_mo, eri_mo)
        jw = jordan_wigner_terms(h, g, e_nuc)
        e0 = np.linalg.eigvalsh(pauli_terms_matrix(jw).real)[0]

    if args.out_ints:
        lines = [
            f"# H2 / STO-3G spin-orbital integrals at {args.distance} angstrom (hartree)",
            "# generated by tools/generate_h2_integrals.py",
            "norb 4",
            "convention physicist",
            f"nuc {float(e_nuc)!r}",
        ]
        n = 4
        for p in range(n):
            for q in range(n):
                if abs(h[p, q]) > 1e-12:
                    lines.append(f"h {p} {q} {float(h[p, q])!r}")
        for p in range(n):
            for q in range(n):
                for r in range(n):
                    for s in range(n):
                        if abs(g[p, q, r, s]) > 1e-12:
                            lines.append(f"g {p} {q} {r} {s} {float(g[p, q, r, s])!r}")
        with open(args.out_ints, "w") as fh:
            fh.write("\n".join(lines) + "\n")
        print(f"wrote {args.out_ints} ({len(lines)} lines)")

    if args.out_ham:
        lines = [
            f"# H2 / STO-3G qubit Hamiltonian at {args.distance} angstrom (hartree),",
            "# Jordan-Wigner, interleaved spin orbitals; character k of the string is qubit k",
            f"# exact ground energy {float(e0)!r}",
        ]
        for s in sorted(jw):
            lines.append(f"{float(jw[s])!r} {s}")
        with open(args.out_ham, "w") as fh:
            fh.write("\n".join(lines) + "\n")
        print(f"wrote {args.out_ham} ({len(jw)} terms, E0 = {e0:.6f})")


if __name__ == "__main__":
    main()
