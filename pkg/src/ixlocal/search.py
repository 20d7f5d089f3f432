"""Exhaustive search over every index code at fixed (q, m, ell).

An encoder is an arbitrary function from message assignments to ``q**ell``
codewords, so the search covers non-linear codes. Encoders are numbered as
base-``q**ell`` numerals whose digits are the codewords of the assignments
in :func:`~ixlocal.codes.iter_assignments` order, the first assignment
being the most significant digit. A codeword value ``d`` has symbol
``(d // q**(ell-1-k)) % q`` at position ``k``. Access sets of each receiver
run in colexicographic order.

Decoders are never enumerated. Receiver ``i`` can decode from access set
``R`` iff no two assignments that agree on its side information but differ
on its demand produce equal symbols on ``R``. Lookup-table decoders are
synthesized only for the witness code.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb, floor, log2, prod

import numpy as np

from .budget import BudgetExceeded, search_budget
from .codes import IndexCode, iter_assignments, table_code
from .problem import UnicastProblem, require_valid

CHUNK_ELEMENTS = 1 << 24
MAX_EXACT_BITS = 4096


def colex_combinations(ell: int, size: int) -> list[tuple[int, ...]]:
    return sorted(combinations(range(ell), size), key=lambda c: tuple(reversed(c)))


@dataclass(frozen=True)
class SearchResult:
    feasible: bool
    witness: IndexCode | None
    encoder_index: int | None
    q: int
    m: int
    ell: int
    access_sizes: tuple[int, ...]
    encoders_total: int
    encoders_scanned: int
    access_choices: int
    search_space: int
    reason: str = ""

    def certificate(self) -> dict:
        return {
            "feasible": self.feasible,
            "q": self.q,
            "m": self.m,
            "ell": self.ell,
            "access_sizes": list(self.access_sizes),
            "encoders_total": self.encoders_total,
            "encoders_scanned": self.encoders_scanned,
            "access_choices": self.access_choices,
            "search_space": self.search_space,
            "exhaustive": self.feasible or self.encoders_scanned == self.encoders_total,
            "witness_encoder_index": self.encoder_index,
            "witness_access_sets": [list(r) for r in self.witness.access_sets] if self.witness else None,
            "reason": self.reason,
        }


@dataclass(frozen=True)
class DisjointnessResult:
    all_disjoint: bool
    counterexample: IndexCode | None
    counterexample_index: int | None
    valid_encoders: int
    valid_codes: int
    encoders_total: int
    search_space: int

    def certificate(self) -> dict:
        return {
            "all_disjoint": self.all_disjoint,
            "valid_encoders": self.valid_encoders,
            "valid_codes": self.valid_codes,
            "encoders_total": self.encoders_total,
            "search_space": self.search_space,
            "counterexample_encoder_index": self.counterexample_index,
            "counterexample_access_sets": (
                [list(r) for r in self.counterexample.access_sets] if self.counterexample else None
            ),
        }


class _Space:
    """Precomputed pieces shared by the searches.

    Sizes are computed first, in log space; the pair tables that the scan
    needs are only built by :meth:`prepare`, after the budget check.
    """

    def __init__(self, p: UnicastProblem, q: int, m: int, ell: int, locality: Fraction):
        require_valid(p)
        if q < 2 or m < 1 or ell < 0:
            raise ValueError("need q >= 2, m >= 1, ell >= 0")
        self.p, self.q, self.m, self.ell = p, q, m, ell
        self.D = q**ell
        self.need = tuple(m * len(rx.wants) for rx in p.receivers)
        self.sizes = tuple(min(ell, floor(locality * k)) for k in self.need)
        self.short = any(k > ell for k in self.need)
        self.access_choices = prod(comb(ell, s) for s in self.sizes)
        input_bits = m * p.N * log2(q)
        self.bits = (2**input_bits) * ell * log2(q) + log2(self.access_choices) if ell else 0.0
        if self.bits <= MAX_EXACT_BITS:
            self.A = q ** (m * p.N)
            self.encoders_total = self.D**self.A
            self.search_space = self.encoders_total * self.access_choices
        else:
            self.A = self.encoders_total = self.search_space = None

    def prepare(self) -> None:
        self.candidates = [colex_combinations(self.ell, s) for s in self.sizes]
        assignments = list(iter_assignments(self.p.messages, self.q, self.m))
        pair_index: dict[tuple[int, int], int] = {}
        self.pairs_of: list[np.ndarray] = []
        for rx in self.p.receivers:
            knows, wants = sorted(rx.knows), sorted(rx.wants)
            groups: dict[tuple, list[tuple[int, tuple]]] = {}
            for a, x in enumerate(assignments):
                groups.setdefault(tuple(x[j] for j in knows), []).append((a, tuple(x[j] for j in wants)))
            mine = []
            for members in groups.values():
                for (a, wa), (b, wb) in combinations(members, 2):
                    if wa != wb:
                        mine.append(pair_index.setdefault((a, b), len(pair_index)))
            self.pairs_of.append(np.array(mine, dtype=np.int64))
        pairs = sorted(pair_index, key=pair_index.get)
        self.left = np.array([a for a, _ in pairs], dtype=np.int64)
        self.right = np.array([b for _, b in pairs], dtype=np.int64)
        self.n_pairs = len(pairs)

    def sizes_json(self) -> dict:
        return dict(q=self.q, m=self.m, ell=self.ell, access_sizes=self.sizes,
                    encoders_total=self.encoders_total, access_choices=self.access_choices,
                    search_space=self.search_space)

    def check_budget(self, budget: int | None) -> None:
        limit = search_budget() if budget is None else budget
        if self.search_space is None or self.search_space > limit:
            raise BudgetExceeded("code search", self.search_space or f"~2^{self.bits:.0f}", limit)
        self.prepare()

    def chunk(self) -> int:
        per = max(1, self.A * max(self.ell, 1) + self.n_pairs * max(self.ell, 1))
        return max(1, min(self.encoders_total, CHUNK_ELEMENTS // per))

    def symbols(self, start: int, stop: int) -> np.ndarray:
        """(B, A, ell) codeword symbols of encoders ``start .. stop-1``."""
        e = np.arange(start, stop, dtype=np.int64)
        digits = np.empty((len(e), self.A), dtype=np.int64)
        for a in range(self.A - 1, -1, -1):
            digits[:, a] = e % self.D
            e //= self.D
        return self._split(digits)

    def _split(self, digits: np.ndarray) -> np.ndarray:
        sym = np.empty(digits.shape + (self.ell,), dtype=np.int16)
        for k in range(self.ell):
            sym[..., k] = digits // self.q ** (self.ell - 1 - k) % self.q
        return sym

    def decodable(self, sym: np.ndarray) -> list[np.ndarray]:
        """Per receiver, a (B, candidates) mask of access sets it can decode from."""
        eq = sym[:, self.left, :] == sym[:, self.right, :]  # (B, pairs, ell)
        out = []
        for pairs, cands in zip(self.pairs_of, self.candidates):
            mask = np.empty((sym.shape[0], len(cands)), dtype=bool)
            if len(pairs) == 0:
                mask[:] = True
                out.append(mask)
                continue
            sub = eq[:, pairs, :]
            for c, r in enumerate(cands):
                if r:
                    collide = np.logical_and.reduce(sub[:, :, list(r)], axis=2)
                    mask[:, c] = ~collide.any(axis=1)
                else:
                    mask[:, c] = False
            out.append(mask)
        return out

    def table(self, index: int) -> list[tuple[int, ...]]:
        return [tuple(int(s) for s in row) for row in self.symbols(index, index + 1)[0]]


def _witness(space: _Space, index: int, masks_row: list[np.ndarray], choose=None) -> IndexCode:
    if choose is None:
        choose = [int(np.argmax(m)) for m in masks_row]
    access = [space.candidates[i][c] for i, c in enumerate(choose)]
    return table_code(space.p, space.q, space.m, space.ell, space.table(index), access)


def bruteforce_feasible(p: UnicastProblem, q: int, m: int, ell: int, locality: Fraction | int = 1,
                        budget: int | None = None) -> SearchResult:
    """Is there any valid code of length ``ell`` whose locality is at most ``locality``?

    The witness is the first valid encoder in enumeration order, paired with
    each receiver's first usable access set.
    """
    locality = Fraction(locality)
    space = _Space(p, q, m, ell, locality)
    base = space.sizes_json()
    if space.short:
        return SearchResult(False, None, None, encoders_scanned=0,
                            reason="some receiver wants more symbols than the codeword has", **base)
    space.check_budget(budget)
    step = space.chunk()
    for start in range(0, space.encoders_total, step):
        stop = min(start + step, space.encoders_total)
        masks = space.decodable(space.symbols(start, stop))
        ok = np.logical_and.reduce([mk.any(axis=1) for mk in masks]) if masks else np.ones(stop - start, bool)
        hits = np.flatnonzero(ok)
        if len(hits):
            k = int(hits[0])
            index = start + k
            code = _witness(space, index, [mk[k] for mk in masks])
            return SearchResult(True, code, index, encoders_scanned=index + 1, **base)
    return SearchResult(False, None, None, encoders_scanned=space.encoders_total,
                        reason="exhausted every encoder and access-set choice", **base)


def bruteforce_locality1_feasible(p: UnicastProblem, q: int, m: int, ell: int,
                                  budget: int | None = None) -> SearchResult:
    return bruteforce_feasible(p, q, m, ell, 1, budget)


def check_access_disjointness(p: UnicastProblem, q: int, m: int, ell: int,
                              budget: int | None = None) -> DisjointnessResult:
    """Enumerate every valid locality-1 code and test whether all have disjoint access sets.

    The counterexample, if any, is the first encoder admitting an overlapping
    valid choice, with the first such choice in receiver-major colex order.
    """
    space = _Space(p, q, m, ell, Fraction(1))
    if space.short:
        return DisjointnessResult(True, None, None, 0, 0, space.encoders_total, space.search_space)
    space.check_budget(budget)
    n = p.n
    overlap = {
        (i, j): np.array([[bool(set(a) & set(b)) for b in space.candidates[j]] for a in space.candidates[i]])
        for i, j in combinations(range(n), 2)
    }
    valid_encoders = 0
    valid_codes = 0
    first_bad = None
    step = space.chunk()
    for start in range(0, space.encoders_total, step):
        stop = min(start + step, space.encoders_total)
        masks = space.decodable(space.symbols(start, stop))
        counts = np.stack([mk.sum(axis=1) for mk in masks], axis=1).astype(np.int64) if masks else None
        if masks:
            ok = np.logical_and.reduce([mk.any(axis=1) for mk in masks])
            valid_encoders += int(ok.sum())
            valid_codes += int(np.prod(counts[ok], axis=1).sum()) if ok.any() else 0
        else:
            ok = np.ones(stop - start, bool)
            valid_encoders += stop - start
            valid_codes += stop - start
        if first_bad is None and ok.any():
            bad = np.zeros(stop - start, dtype=bool)
            for (i, j), ov in overlap.items():
                # any decodable R_i, R_j that intersect
                bad |= np.einsum("bx,xy,by->b", masks[i].astype(np.int64), ov.astype(np.int64),
                                 masks[j].astype(np.int64)) > 0
            bad &= ok
            hits = np.flatnonzero(bad)
            if len(hits):
                k = int(hits[0])
                first_bad = (start + k, [mk[k] for mk in masks])
    if first_bad is None:
        return DisjointnessResult(True, None, None, valid_encoders, valid_codes,
                                  space.encoders_total, space.search_space)
    index, row = first_bad
    choose = None
    for combo in product(*[np.flatnonzero(r) for r in row]):
        sets = [set(space.candidates[i][c]) for i, c in enumerate(combo)]
        if any(sets[i] & sets[j] for i, j in combinations(range(n), 2)):
            choose = [int(c) for c in combo]
            break
    code = _witness(space, index, row, choose)
    return DisjointnessResult(False, code, index, valid_encoders, valid_codes,
                              space.encoders_total, space.search_space)


def linear_feasible(p: UnicastProblem, q: int, m: int, ell: int, budget: int | None = None) -> SearchResult:
    """Sanity mode: only encoders ``c = M x (mod q)`` for ``ell x mN`` matrices ``M``.

    Never a converse certificate, since non-linear codes are skipped.
    """
    space = _Space(p, q, m, ell, Fraction(1))
    cols = m * p.N
    total = q ** (ell * cols)
    base = dict(q=q, m=m, ell=ell, access_sizes=space.sizes, encoders_total=total,
                access_choices=space.access_choices, search_space=total * space.access_choices)
    if space.short:
        return SearchResult(False, None, None, encoders_scanned=0,
                            reason="some receiver wants more symbols than the codeword has", **base)
    limit = search_budget() if budget is None else budget
    work = total * space.access_choices * q ** (m * p.N) if m * p.N * log2(q) <= 64 else None
    if work is None or work > limit:
        raise BudgetExceeded("linear code search", work or f"~2^{ell * cols * log2(q) + m * p.N * log2(q):.0f}", limit)
    space.prepare()
    xs = np.array([[s for j in sorted(x) for s in x[j]] for x in iter_assignments(p.messages, q, m)],
                  dtype=np.int64)  # (A, cols)
    for idx, flat in enumerate(product(range(q), repeat=ell * cols)):
        M = np.array(flat, dtype=np.int64).reshape(ell, cols)
        sym = (xs @ M.T) % q  # (A, ell)
        masks = space.decodable(sym[None, :, :].astype(np.int16))
        if all(mk[0].any() for mk in masks):
            access = [space.candidates[i][int(np.argmax(mk[0]))] for i, mk in enumerate(masks)]
            code = table_code(p, q, m, ell, [tuple(int(v) for v in row) for row in sym], access)
            code.descriptor["linear_matrix"] = M.tolist()
            return SearchResult(True, code, int(idx), encoders_scanned=idx + 1, reason="linear only", **base)
    return SearchResult(False, None, None, encoders_scanned=total,
                        reason="no linear code (non-linear codes not searched)", **base)


def minimum_length(p: UnicastProblem, q: int, m: int, locality: Fraction | int = 1,
                   max_ell: int | None = None, budget: int | None = None) -> tuple[int, list[SearchResult]]:
    """Smallest ``ell`` admitting a valid code of locality at most ``locality``.

    Tries ``ell = 0, 1, ...`` up to ``max_ell`` (default ``m * N``, where
    uncoded transmission always works) and returns the first feasible length
    together with the certificate of every length tried.
    """
    top = m * p.N if max_ell is None else max_ell
    tried = []
    for ell in range(top + 1):
        res = bruteforce_feasible(p, q, m, ell, locality, budget)
        tried.append(res)
        if res.feasible:
            return ell, tried
    raise ValueError(f"no valid code up to length {top}")
