"""Generalized Koszul complexes for M = R + F^m over R = F[x_1..x_n]/(x)^2.

End_R(M) acts on M from the right.  Everything is realised as F_p-linear
maps on row vectors; the basis of M is (1, x_1..x_n, u_1..u_m).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .linalg_fp import nullspace, rank


class NotTwoSided(ValueError):
    pass


@dataclass
class RInstance:
    n: int
    m: int
    p: int = 7

    @property
    def dim_R(self) -> int:
        return self.n + 1

    @property
    def dim(self) -> int:
        return self.n + 1 + self.m

    def r_vec(self, const=0, lin=()) -> np.ndarray:
        v = np.zeros(self.dim_R, dtype=np.int64)
        v[0] = const
        for k, c in enumerate(lin):
            v[1 + k] = c
        return v % self.p

    def block(self, entries: dict) -> np.ndarray:
        """The linear map of a matrix in block form.

        Keys (i, j) with 0 <= i, j <= m.  (0,0) is an element of R given as a
        length n+1 vector; (0,j) and (i,j) are scalars; (i,0) is an element of
        m_R given as a length n+1 vector with zero constant term.
        """
        N, nR = self.dim, self.dim_R
        A = np.zeros((N, N), dtype=np.int64)
        for (i, j), val in entries.items():
            if i == 0 and j == 0:
                r = np.asarray(val)
                A[0, :nR] += r
                for k in range(1, nR):
                    A[k, k] += r[0]
            elif i == 0:
                A[0, nR + j - 1] += val
            elif j == 0:
                b = np.asarray(val)
                if b[0] % self.p:
                    raise ValueError("Hom(F, R) lands in m_R")
                A[nR + i - 1, :nR] += b
            else:
                A[nR + i - 1, nR + j - 1] += val
        return A % self.p

    def basis_End(self) -> list:
        out = []
        nR, m = self.dim_R, self.m
        for k in range(nR):
            e = np.zeros(nR, dtype=np.int64)
            e[k] = 1
            out.append(self.block({(0, 0): e}))
        for j in range(1, m + 1):
            out.append(self.block({(0, j): 1}))
        for i in range(1, m + 1):
            for k in range(1, nR):
                e = np.zeros(nR, dtype=np.int64)
                e[k] = 1
                out.append(self.block({(i, 0): e}))
            for j in range(1, m + 1):
                out.append(self.block({(i, j): 1}))
        return out

    def J_b(self, b_basis) -> list:
        """Spanning maps of J_b for b spanned by the given linear forms."""
        nR, m = self.dim_R, self.m
        out = []
        for k in range(1, nR):
            e = np.zeros(nR, dtype=np.int64)
            e[k] = 1
            out.append(self.block({(0, 0): e}))
        for j in range(1, m + 1):
            out.append(self.block({(0, j): 1}))
        for i in range(1, m + 1):
            for b in b_basis:
                out.append(self.block({(i, 0): self.r_vec(0, b)}))
        return out

    def r_action(self, k: int) -> np.ndarray:
        """Left multiplication by x_k on M (row-vector convention)."""
        N = self.dim
        A = np.zeros((N, N), dtype=np.int64)
        A[0, 1 + k] = 1
        return A


def _flat(mats):
    return np.array([A.reshape(-1) for A in mats], dtype=np.int64)


def _span_basis(rows, p):
    rows = np.array(rows, dtype=np.int64).reshape(len(rows), -1) % p if len(rows) else None
    if rows is None or rows.size == 0:
        return np.zeros((0, 0), dtype=np.int64)
    from .linalg_fp import rref
    R, piv = rref(rows, p)
    return R[:len(piv)]


def left_ideal(inst: RInstance, gens) -> list:
    basis = inst.basis_End()
    prods = [(B @ g) % inst.p for g in gens for B in basis]
    return prods


def same_span(mats1, mats2, p) -> bool:
    a, b = _flat(mats1), _flat(mats2)
    ra, rb = rank(a, p), rank(b, p)
    return ra == rb == rank(np.vstack([a, b]), p)


def is_two_sided(inst: RInstance, J) -> bool:
    J_flat = _span_basis(_flat(J), inst.p)
    if not len(J_flat):
        return True
    prods = _flat([(A @ B) % inst.p for A in J_flat.reshape(-1, inst.dim, inst.dim)
                   for B in inst.basis_End()])
    return rank(np.vstack([J_flat, prods]), inst.p) == len(J_flat)


def MJ(inst: RInstance, J) -> np.ndarray:
    rows = np.vstack([A for A in J]) if J else np.zeros((0, inst.dim), dtype=np.int64)
    return _span_basis(rows, inst.p)


def MJ2(inst: RInstance, J) -> np.ndarray:
    W = MJ(inst, J)
    rows = [(w @ A) % inst.p for w in W for A in J]
    if not rows:
        return np.zeros((0, inst.dim), dtype=np.int64)
    return _span_basis(np.array(rows), inst.p)


def socle(inst: RInstance) -> np.ndarray:
    """Vectors killed by every x_k."""
    stacked = np.hstack([inst.r_action(k) for k in range(inst.n)])
    # v . stacked = 0
    return nullspace(stacked.T, inst.p)


def _dim_sum(a, b, p):
    if a.size == 0:
        return rank(b, p) if b.size else 0
    if b.size == 0:
        return rank(a, p)
    return rank(np.vstack([a, b]), p)


def koszul_differential(inst: RInstance, phis, l: int) -> np.ndarray:
    """d_l : M x wedge^l -> M x wedge^{l-1} as a matrix on row vectors."""
    k, N, p = len(phis), inst.dim, inst.p
    src = list(itertools.combinations(range(k), l))
    tgt = list(itertools.combinations(range(k), l - 1))
    tidx = {t: j for j, t in enumerate(tgt)}
    D = np.zeros((N * len(src), N * len(tgt)), dtype=np.int64)
    for si, s in enumerate(src):
        for r, i in enumerate(s):
            t = s[:r] + s[r + 1:]
            sign = -1 if r % 2 else 1
            ti = tidx[t]
            D[si * N:(si + 1) * N, ti * N:(ti + 1) * N] += sign * phis[i]
    return D % p


def _tensor_space(W: np.ndarray, copies: int, N: int) -> np.ndarray:
    if W.size == 0:
        return np.zeros((0, N * copies), dtype=np.int64)
    rows = []
    for c in range(copies):
        for w in W:
            v = np.zeros(N * copies, dtype=np.int64)
            v[c * N:(c + 1) * N] = w
            rows.append(v)
    return np.array(rows, dtype=np.int64)


def dbar_injective(inst: RInstance, phis, J, l: int) -> bool:
    """d_l^{-1}(K_{l-1} J^2) is contained in K_l J."""
    p, N, k = inst.p, inst.dim, len(phis)
    D = koszul_differential(inst, phis, l)
    ns = len(list(itertools.combinations(range(k), l)))
    nt = len(list(itertools.combinations(range(k), l - 1)))
    W2 = _tensor_space(MJ2(inst, J), nt, N)
    W1 = _tensor_space(MJ(inst, J), ns, N)
    # preimage: v with v D in span(W2); solve [v, w] [D; -W2] = 0
    stack = np.vstack([D, (-W2) % p]) if W2.size else D
    sol = nullspace(stack.T, p)
    pre = sol[:, :N * ns] if sol.size else np.zeros((0, N * ns), dtype=np.int64)
    return _dim_sum(pre, W1, p) == (rank(W1, p) if W1.size else 0)


def generalized_koszul_check(inst: RInstance, phis, b_basis=None) -> dict:
    p = inst.p
    J = left_ideal(inst, phis)
    if not is_two_sided(inst, J):
        raise NotTwoSided("the left ideal generated by phi is not two-sided")
    inj = [dbar_injective(inst, phis, J, l) for l in range(1, len(phis) + 1)]
    out = {"n": inst.n, "m": inst.m, "k": len(phis), "injective": inj,
           "serre_lemma": (not inj[0]) or all(inj)}
    mj, mj2 = MJ(inst, J), MJ2(inst, J)
    out["dim_M_mod_MJ"] = inst.dim - len(mj)
    out["dim_MJ_mod_MJ2"] = len(mj) - len(mj2)
    soc = socle(inst)
    out["MJ_is_socle"] = _dim_sum(mj, soc, p) == len(mj) == len(soc)
    if b_basis is not None:
        Jb = inst.J_b(b_basis)
        out["J_equals_Jb"] = same_span(J, Jb, p)
        db = rank(np.array(b_basis), p) if len(b_basis) else 0
        out["dim_b"] = db
        out["dim_formula"] = out["dim_MJ_mod_MJ2"] == inst.n + inst.m - db
        # (phi_1bar, ..., phi_kbar) on (M/MJ)^k = span(v_0)^k
        v0 = np.zeros(inst.dim, dtype=np.int64)
        v0[0] = 1
        imgs = np.array([(v0 @ A) % p for A in phis])
        tot = _dim_sum(imgs, mj2, p) - len(mj2)
        out["phibar_surjective"] = tot == out["dim_MJ_mod_MJ2"]
        out["phibar_iso"] = out["phibar_surjective"] and len(phis) == out["dim_MJ_mod_MJ2"]
        out["dim_b_ge_m"] = db >= inst.m
        out["iso_iff_equal"] = out["phibar_iso"] == (db == inst.m) if len(phis) == inst.n else None
    return out


def example_instance(p: int = 7, fsharp: int = 1) -> tuple:
    """n = 2 (x, y), m = 1, phi_1 = (0 f#; x 0), phi_2 = (x - y 0; 0 0)."""
    inst = RInstance(2, 1, p)
    x = inst.r_vec(0, (1, 0))
    xy = inst.r_vec(0, (1, -1))
    phi1 = inst.block({(0, 1): fsharp, (1, 0): x})
    phi2 = inst.block({(0, 0): xy})
    return inst, [phi1, phi2], [(1, 0)]


def classify_ideal(inst: RInstance, J) -> tuple | None:
    """b with J = J_b when J_(0) <= J <= J_(m_R), else None (basis of b as rows)."""
    p, nR, m = inst.p, inst.dim_R, inst.m
    J0 = inst.J_b([])
    Jm = inst.J_b([tuple(int(k == j) for k in range(inst.n)) for j in range(inst.n)])
    Jf, J0f, Jmf = _flat(J), _flat(J0), _flat(Jm)
    rJ = rank(Jf, p)
    if rank(np.vstack([Jf, J0f]), p) != rJ:
        return None
    if rank(np.vstack([Jmf, Jf]), p) != rank(Jmf, p):
        return None
    rows = []
    for A in J:
        for i in range(1, m + 1):
            rows.append(A[nR + i - 1, 1:nR])
    b = _span_basis(np.array(rows), p) if rows else np.zeros((0, inst.n), dtype=np.int64)
    b = [tuple(int(x) for x in r) for r in b if np.any(r)]
    return tuple(b) if same_span(J, inst.J_b(b), p) else None


def random_instance(rng, p: int = 7, nmax: int = 3):
    """(inst, phis, b) with phis random elements of J_b generating a two-sided ideal.

    Returns None when the drawn phis fail to generate a two-sided left ideal.
    """
    n = rng.randint(1, nmax)
    m = rng.randint(0, n)
    inst = RInstance(n, m, p)
    db = rng.randint(0, n)
    b = [tuple(rng.randrange(p) for _ in range(n)) for _ in range(db)]
    b = [r for r in b if any(r)] if m else []  # J_b does not see b when m = 0
    span = inst.J_b(b)
    k = rng.randint(1, min(len(span), n + m + 1))
    phis = []
    for _ in range(k):
        A = np.zeros((inst.dim, inst.dim), dtype=np.int64)
        for B in span:
            A = A + rng.randrange(p) * B
        phis.append(A % p)
    if not is_two_sided(inst, left_ideal(inst, phis)):
        return None
    return inst, phis, b


def random_instances(seed: int, count: int, p: int = 7, nmax: int = 3) -> list:
    import random
    rng = random.Random(seed)
    out = []
    tries = 0
    while len(out) < count and tries < 50 * count:
        tries += 1
        got = random_instance(rng, p, nmax)
        if got is not None:
            out.append(got)
    return out
