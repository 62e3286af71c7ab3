"""Niemeier lattices from root lattices plus glue codes, and embeddings of
small root lattices into them.

Coordinates: everything inside a Niemeier lattice is first expressed over
the simple roots of its root system R (Gram = minus the Cartan matrix).
Glue vectors are rational in those coordinates.  Each glue word lists one
discriminant class per component, in the canonical component order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from . import exact as ex
from .lattice import Lattice, LatticeError, overlattice_from_glue
from .roots import ADEType, cartan_matrix, classify_roots, root_lattice, simple_roots, vectors_of_norm


def _cyclic(head: Sequence[int], tail: Sequence[int]) -> list[list[int]]:
    n = len(tail)
    return [list(head) + [tail[(i - k) % n] for i in range(n)] for k in range(n)]


def _even_permutations(word: Sequence[int]) -> list[list[int]]:
    from itertools import permutations

    out = []
    n = len(word)
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        if inv % 2 == 0:
            out.append([word[perm[i]] for i in range(n)])
    return out


# Glue generators (classes per component).  D_n classes: 1 and 3 are the two
# spinor classes, 2 the vector class.  E6 classes 1, 2 are the two nonzero
# classes; E7 class 1 is the nonzero class.
GLUE_CODES: dict[str, list[list[int]]] = {
    "D24": [[1]],
    "D16 + E8": [[1, 0]],
    "3E8": [],
    "A24": [[5]],
    "2D12": [[1, 2], [2, 1]],
    "A17 + E7": [[3, 1]],
    "D10 + 2E7": [[1, 1, 0], [3, 0, 1]],
    "A15 + D9": [[2, 1]],
    "3D8": _cyclic([], [1, 2, 2]),
    "2A12": [[1, 5]],
    "A11 + D7 + E6": [[1, 1, 1]],
    "4E6": [[1, 0, 1, 2], [1, 2, 0, 1], [1, 1, 2, 0]],
    "2A9 + D6": [[2, 4, 0], [5, 0, 1], [0, 5, 3]],
    "4D6": _even_permutations([0, 1, 2, 3]),
    "3A8": _cyclic([], [1, 1, 4]),
    "2A7 + 2D5": [[1, 1, 1, 2], [1, 7, 2, 1]],
    "4A6": [[1, 2, 1, 6], [1, 6, 2, 1], [1, 1, 6, 2]],
    "4A5 + D4": [[2, 0, 2, 4, 0], [2, 4, 0, 2, 0], [2, 2, 4, 0, 0],
                 [3, 3, 0, 0, 1], [3, 0, 3, 0, 2], [3, 0, 0, 3, 3]],
    # hexacode: the F4-span also needs the omega-multiple of the all-ones word
    "6D4": [[1, 1, 1, 1, 1, 1], [2, 2, 2, 2, 2, 2]] + _cyclic([0], [0, 2, 3, 3, 2]),
    "6A4": _cyclic([1], [0, 1, 4, 4, 1]),
    "8A3": _cyclic([3], [2, 0, 0, 1, 0, 1, 1]),
    "12A2": _cyclic([2], [1, 1, 2, 1, 1, 1, 2, 2, 2, 1, 2]),
}

# Row order of the reference fibration tables.
TABLE_ORDER = {
    2: ["4A5 + D4", "6D4", "2A7 + 2D5", "2A9 + D6", "4D6", "A11 + D7 + E6", "4E6",
        "3D8", "A15 + D9", "A17 + E7", "D10 + 2E7", "2D12", "D16 + E8", "3E8", "D24"],
    3: ["12A2", "8A3", "6A4", "6D4", "4A5 + D4", "4A6", "2A7 + 2D5", "3A8", "4D6",
        "2A9 + D6", "4E6", "A11 + D7 + E6", "2A12", "3D8", "A15 + D9", "A17 + E7",
        "D10 + 2E7", "2D12", "3E8", "D16 + E8", "A24", "D24"],
}


def _class_weight(fam: str, k: int, cls: int) -> list[Fraction]:
    """Fundamental-weight representative of a discriminant class, in simple-root coordinates."""
    if cls == 0:
        return [Fraction(0)] * k
    inv = ex.inverse(cartan_matrix(fam, k))
    if fam == "A":
        idx = cls - 1
    elif fam == "D":
        idx = {1: k - 2, 2: 0, 3: k - 1}[cls]
    elif fam == "E" and k == 6:
        idx = {1: 0, 2: 5}[cls]
    elif fam == "E" and k == 7:
        if cls != 1:
            raise ValueError("E7 has one nonzero class")
        idx = 6
    else:
        raise ValueError(f"no class {cls} for {fam}{k}")
    return [ex.to_fraction(x) for x in inv[idx]]


@dataclass(frozen=True)
class NiemeierSpec:
    root_type: ADEType
    glue: tuple

    @classmethod
    def named(cls, name: str) -> "NiemeierSpec":
        t = ADEType.parse(name)
        key = str(t)
        if key not in GLUE_CODES:
            raise KeyError(f"no glue data for {name}")
        return cls(t, tuple(tuple(w) for w in GLUE_CODES[key]))

    def glue_vectors(self) -> list[list[Fraction]]:
        out = []
        for word in self.glue:
            if len(word) != len(self.root_type.components):
                raise LatticeError(f"glue word {word} has the wrong length")
            v: list[Fraction] = []
            for (fam, k), c in zip(self.root_type.components, word):
                v.extend(_class_weight(fam, k, c))
            out.append(v)
        return out


@dataclass
class Niemeier:
    """A built Niemeier lattice together with its root data."""

    spec: NiemeierSpec
    lattice: Lattice            # Gram on the overlattice basis
    basis: list                 # overlattice basis in root coordinates
    root_gram: list             # minus Cartan
    roots: list                 # all roots, root coordinates (integers)

    @property
    def name(self) -> str:
        return str(self.spec.root_type)

    @cached_property
    def basis_inverse(self) -> list:
        return ex.inverse(self.basis)

    def to_lattice_coords(self, v: Sequence) -> list[int]:
        w = ex.vec_mat(list(v), self.basis_inverse)
        if any(ex.to_fraction(x).denominator != 1 for x in w):
            raise LatticeError("vector not in the Niemeier lattice")
        return [int(x) for x in w]

    def to_json(self) -> dict:
        from .lattice import vector_to_json
        out = self.lattice.to_json()
        out["root_type"] = self.name
        out["glue"] = [vector_to_json(v) for v in self.spec.glue_vectors()]
        return out


def build_niemeier(spec: NiemeierSpec | str) -> Niemeier:
    if isinstance(spec, str):
        spec = NiemeierSpec.named(spec)
    R = root_lattice(spec.root_type)
    if R.rank != 24:
        raise LatticeError(f"root type {spec.root_type} has rank {R.rank}, not 24")
    glue = spec.glue_vectors()
    N, basis = overlattice_from_glue(R, glue)
    if abs(N.det) != 1:
        raise LatticeError(f"{spec.root_type}: glue gives determinant {N.det}, not unimodular")
    if not N.is_even:
        raise LatticeError(f"{spec.root_type}: glue gives an odd lattice")
    roots_n = vectors_of_norm(N, -2)
    if len(roots_n) != spec.root_type.root_count:
        raise LatticeError(f"{spec.root_type}: glue adds roots ({len(roots_n)} found)")
    roots = sorted(tuple(int(x) for x in ex.vec_mat(r, basis)) for r in roots_n)
    t, _ = classify_roots(R.gram, roots)
    if t != spec.root_type:
        raise LatticeError(f"root system is {t}, expected {spec.root_type}")
    return Niemeier(spec, Lattice(N.gram, label=str(spec.root_type)), basis, R.G, roots)


# ------------------------------------------------------------------ embeddings

# Required Gram matrices of T on the chosen roots (negative definite).
T_GRAMS = {
    "D4": [[-2, 1, 1, 1], [1, -2, 0, 0], [1, 0, -2, 0], [1, 0, 0, -2]],
    "2A2": [[-2, 1, 0, 0], [1, -2, 0, 0], [0, 0, -2, 1], [0, 0, 1, -2]],
}
T_PRIME = {"D4": 2, "2A2": 3}


@dataclass
class EmbeddingClass:
    niemeier: str
    T_kind: str
    T_roots: tuple              # root coordinates of the chosen T basis
    K: Lattice                  # orthogonal complement of T, reduced basis
    K_basis: list               # rows in Niemeier-lattice coordinates
    fiber_type: ADEType         # roots of K
    mw_torsion: tuple
    mw_rank: int
    dual_fiber_type: Optional[ADEType] = None
    K_root_simple: list = field(default_factory=list)

    @property
    def invariants(self) -> tuple:
        return (str(self.fiber_type), self.mw_torsion, self.mw_rank, str(self.dual_fiber_type))


class _WeylCanonicalizer:
    """Dominant representatives for the Weyl group of roots orthogonal to a set."""

    def __init__(self, B: np.ndarray, roots: np.ndarray, fixed: list[np.ndarray]):
        self.B = B
        if fixed:
            F = np.array(fixed) @ B
            mask = ~(roots @ F.T).any(axis=1)
            sub = roots[mask]
        else:
            sub = roots
        simple = simple_roots((-B).tolist(), [tuple(r) for r in sub.tolist()])
        self.S = np.array(simple, dtype=np.int64).reshape(len(simple), B.shape[0])
        self.SB = self.S @ B

    def canon(self, X: np.ndarray) -> np.ndarray:
        X = X.copy()
        if len(self.S) == 0 or len(X) == 0:
            return X
        while True:
            P = X @ self.SB.T
            neg = P < 0
            rows = np.nonzero(neg.any(axis=1))[0]
            if len(rows) == 0:
                return X
            cols = neg[rows].argmax(axis=1)
            X[rows] -= P[rows, cols][:, None] * self.S[cols]


def _embedding_leaves(N: Niemeier, T_kind: str) -> list[tuple]:
    """One root tuple per Weyl-orbit of root tuples with the Gram of T."""
    target = np.array(T_GRAMS[T_kind], dtype=np.int64)
    B = -np.array(N.root_gram, dtype=np.int64)      # positive form
    R = np.array(N.roots, dtype=np.int64)
    RG = R @ (-B)                                    # rows: <r, .>_G as functionals
    k = len(target)
    leaves = []

    def rec(chosen: list[int]):
        j = len(chosen)
        if j == k:
            leaves.append(tuple(tuple(int(a) for a in R[i]) for i in chosen))
            return
        mask = np.ones(len(R), dtype=bool)
        for a, i in enumerate(chosen):
            mask &= (RG[i] @ R.T) == target[a, j]
        cand = R[mask]
        if len(cand) == 0:
            return
        W = _WeylCanonicalizer(B, R, [R[i] for i in chosen])
        reps = np.unique(W.canon(cand), axis=0)
        index = {tuple(r): i for i, r in enumerate(R.tolist())}
        for rep in reps.tolist():
            rec(chosen + [index[tuple(rep)]])

    rec([])
    return leaves


def _invariant_factors_torsion(rows: list) -> tuple:
    if not rows:
        return (1,)
    f = [d for d in ex.smith_normal_form(rows).invariant_factors if d > 1]
    return tuple(f) if f else (1,)


def analyze_leaf(N: Niemeier, T_kind: str, T_roots: Sequence[Sequence[int]],
                 with_dual: bool = True) -> Optional[EmbeddingClass]:
    """Complement data for one T-copy; None if the copy is not primitive."""
    from .lattice import dual_rescale_p

    p = T_PRIME[T_kind]
    Tn = [N.to_lattice_coords(t) for t in T_roots]
    if any(d != 1 for d in ex.smith_normal_form(Tn).invariant_factors):
        return None
    GN = N.lattice.gram
    Kb = ex.integer_left_kernel(ex.mat_mul(GN, ex.transpose(Tn)))
    GK = ex.mat_mul(ex.mat_mul(Kb, GN), ex.transpose(Kb))
    GKr, H = ex.lll_gram([[-x for x in r] for r in GK])
    Kb = ex.mat_mul(H, Kb)
    K = Lattice(ex.scale(GKr, -1), label=f"K[{N.name}]")
    if K.rank != 24 - len(T_roots) or abs(K.det) != abs(ex.det_exact(T_GRAMS[T_kind])):
        raise LatticeError("complement has unexpected rank or discriminant")
    # roots of K are the roots of N orthogonal to T
    Tr = np.array(T_roots, dtype=np.int64)
    R = np.array(N.roots, dtype=np.int64)
    G = np.array(N.root_gram, dtype=np.int64)
    orth = R[~((R @ G @ Tr.T).any(axis=1))]
    ftype, simple = classify_roots(N.root_gram, [tuple(r) for r in orth.tolist()])
    torsion = _invariant_factors_torsion([N.to_lattice_coords(s) for s in simple])
    mw_rank = K.rank - ftype.rank
    cls = EmbeddingClass(N.name, T_kind, tuple(tuple(t) for t in T_roots), K, Kb,
                         ftype, torsion, mw_rank, None, list(simple))
    if with_dual:
        from .roots import root_sublattice
        cls.dual_fiber_type = root_sublattice(dual_rescale_p(K, p))[1]
    return cls


def find_embeddings(N: Niemeier | str, T_kind: str) -> list[EmbeddingClass]:
    """Primitive T-copies in N up to the invariant tuple, sorted by fiber type."""
    if isinstance(N, str):
        N = build_niemeier(N)
    if T_kind not in T_GRAMS:
        raise ValueError(f"T must be one of {sorted(T_GRAMS)}")
    seen: dict[tuple, EmbeddingClass] = {}
    for leaf in _embedding_leaves(N, T_kind):
        cls = analyze_leaf(N, T_kind, leaf)
        if cls is not None and cls.invariants not in seen:
            seen[cls.invariants] = cls
    return sorted(seen.values(), key=lambda c: c.invariants)
