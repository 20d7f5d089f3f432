"""Index codes: construction, exhaustive verification, ESUP lifting, serialization.

Conventions used throughout:

* a message is a tuple of ``m`` symbols in ``range(q)``;
* codeword positions are 0-based, ``0 .. ell-1``;
* an access set is a sorted tuple of positions, and a receiver observes the
  codeword symbols at those positions in that order;
* message assignments are enumerated lexicographically, the smallest message
  label being the most significant (see :func:`iter_assignments`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .budget import BudgetExceeded, search_budget
from .invariants import CliquePartition
from .problem import UnicastProblem, conflict_graph, esup, require_valid

Message = tuple[int, ...]
Assignment = Mapping[int, Message]
Encoder = Callable[[Assignment], tuple[int, ...]]
Decoder = Callable[[tuple[int, ...], Assignment], "dict[int, Message] | None"]


@dataclass(frozen=True)
class IndexCode:
    q: int
    m: int
    ell: int
    encoder: Encoder
    access_sets: tuple[tuple[int, ...], ...]
    decoders: tuple[Decoder, ...]
    # how to write the encoder to JSON; see to_json
    descriptor: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.q < 2 or self.m < 1 or self.ell < 0:
            raise ValueError(f"need q >= 2, m >= 1, ell >= 0 (got {self.q}, {self.m}, {self.ell})")
        if len(self.access_sets) != len(self.decoders):
            raise ValueError("one decoder per access set")
        for r in self.access_sets:
            if any(not 0 <= k < self.ell for k in r) or list(r) != sorted(set(r)):
                raise ValueError(f"access set {r} is not a sorted subset of range({self.ell})")

    @property
    def rate(self) -> Fraction:
        return Fraction(self.ell, self.m)

    def receiver_localities(self, p: UnicastProblem) -> tuple[Fraction | None, ...]:
        """``|R_i| / (m |W_i|)`` per receiver; ``None`` for receivers that want nothing."""
        if len(p.receivers) != len(self.access_sets):
            raise ValueError("code and problem disagree on the number of receivers")
        return tuple(
            Fraction(len(r), self.m * len(rx.wants)) if rx.wants else None
            for r, rx in zip(self.access_sets, p.receivers)
        )

    def locality(self, p: UnicastProblem) -> Fraction:
        rs = [r for r in self.receiver_localities(p) if r is not None]
        return max(rs, default=Fraction(0))

    def observe(self, codeword: Sequence[int], i: int) -> tuple[int, ...]:
        return tuple(codeword[k] for k in self.access_sets[i])


def iter_assignments(messages: Sequence[int], q: int, m: int) -> Iterator[dict[int, Message]]:
    """Every assignment of messages in lexicographic order (first message most significant)."""
    messages = sorted(messages)
    for flat in product(range(q), repeat=m * len(messages)):
        yield {j: flat[k * m:(k + 1) * m] for k, j in enumerate(messages)}


def assignment_count(p: UnicastProblem, q: int, m: int) -> int:
    return q ** (m * p.N)


def _check_budget(what: str, size: int, budget: int | None) -> None:
    limit = search_budget() if budget is None else budget
    if size > limit:
        raise BudgetExceeded(what, size, limit)


# --- clique cover codes -----------------------------------------------------------


def build_clique_cover_code(p: UnicastProblem, partition: CliquePartition | Iterable[Iterable[int]], q: int = 2, m: int = 1) -> IndexCode:
    """Send the mod-``q`` sum of each clique's messages as one ``m``-symbol block.

    Every receiver reads the blocks of the cliques holding its wanted
    messages and subtracts the other clique members, which it knows.
    """
    require_valid(p)
    if not isinstance(partition, CliquePartition):
        partition = CliquePartition(partition)
    g = conflict_graph(p)
    problems = partition.violations(g)
    if problems:
        raise ValueError("not a clique partition of the conflict graph: " + "; ".join(problems))
    if q < 2 or m < 1:
        raise ValueError("need q >= 2 and m >= 1")
    cliques = [tuple(sorted(c)) for c in partition.cliques]
    block_of = {v: t for t, c in enumerate(cliques) for v in c}

    for rx in p.receivers:
        for v in rx.wants:
            others = set(cliques[block_of[v]]) - {v}
            if not others <= rx.knows:
                raise ValueError(
                    f"clique {list(cliques[block_of[v]])} needs {sorted(others - rx.knows)} "
                    f"at the receiver wanting {v}"
                )

    def encoder(x: Assignment) -> tuple[int, ...]:
        out: list[int] = []
        for c in cliques:
            out.extend(sum(x[v][k] for v in c) % q for k in range(m))
        return tuple(out)

    access_sets = []
    decoders = []
    for rx in p.receivers:
        blocks = sorted({block_of[v] for v in rx.wants})
        access_sets.append(tuple(t * m + k for t in blocks for k in range(m)))
        decoders.append(_clique_decoder(rx.wants, blocks, cliques, block_of, q, m))

    return IndexCode(
        q, m, m * len(cliques), encoder, tuple(access_sets), tuple(decoders),
        descriptor={"kind": "clique_partition", "cliques": [list(c) for c in cliques]},
    )


def _clique_decoder(wants, blocks, cliques, block_of, q, m) -> Decoder:
    slot = {t: n for n, t in enumerate(blocks)}
    wants = sorted(wants)

    def decode(observed: tuple[int, ...], side: Assignment) -> dict[int, Message]:
        out = {}
        for v in wants:
            t = block_of[v]
            base = slot[t] * m
            out[v] = tuple(
                (observed[base + k] - sum(side[u][k] for u in cliques[t] if u != v)) % q
                for k in range(m)
            )
        return out

    return decode


def uncoded_code(p: UnicastProblem, q: int = 2, m: int = 1) -> IndexCode:
    """Plain transmission: one block per message, i.e. the all-singleton partition."""
    return build_clique_cover_code(p, [[j] for j in p.messages], q, m)


# --- verification --------------------------------------------------------------


@dataclass(frozen=True)
class Verification:
    valid: bool
    locality: Fraction
    rate: Fraction
    receiver_localities: tuple[Fraction | None, ...]
    failure: tuple[int, dict] | None = None  # (receiver index, assignment)


def verify_code(p: UnicastProblem, code: IndexCode, budget: int | None = None) -> Verification:
    """Run every receiver's decoder on every message assignment."""
    require_valid(p)
    if len(p.receivers) != len(code.access_sets):
        raise ValueError("code and problem disagree on the number of receivers")
    _check_budget("verify_code", assignment_count(p, code.q, code.m) * max(p.n, 1), budget)
    failure = None
    for x in iter_assignments(p.messages, code.q, code.m):
        c = code.encoder(x)
        if len(c) != code.ell:
            raise ValueError(f"encoder produced {len(c)} symbols, expected {code.ell}")
        for i, rx in enumerate(p.receivers):
            side = {j: x[j] for j in rx.knows}
            got = code.decoders[i](code.observe(c, i), side)
            want = {j: x[j] for j in rx.wants}
            if got is None or dict(got) != want:
                failure = (i, dict(x))
                break
        if failure:
            break
    return Verification(
        failure is None, code.locality(p), code.rate, code.receiver_localities(p), failure
    )


# --- moving codes between a problem and its ESUP ----------------------------------


def lift_esup_code(p: UnicastProblem, code: IndexCode) -> IndexCode:
    """Turn a locality-1 code for ``esup(p)`` into a code for ``p``.

    Receiver ``u_i`` reads the union of its children's access sets and runs
    each child's decoder on the matching part of its observation.
    """
    single, children = esup(p)
    if code.locality(single) > 1:
        raise ValueError(f"lifting needs locality 1, code has {code.locality(single)}")
    access_sets, decoders = [], []
    for kids in children:
        union = tuple(sorted({k for c in kids for k in code.access_sets[c]}))
        access_sets.append(union)
        decoders.append(_lifted_decoder(union, [(code.access_sets[c], code.decoders[c]) for c in kids]))
    return IndexCode(code.q, code.m, code.ell, code.encoder, tuple(access_sets), tuple(decoders), code.descriptor)


def _lifted_decoder(union, parts) -> Decoder:
    where = {k: n for n, k in enumerate(union)}

    def decode(observed, side):
        out = {}
        for r, dec in parts:
            got = dec(tuple(observed[where[k]] for k in r), side)
            if got is None:
                return None
            out.update(got)
        return out

    return decode


def lower_esup_code(p: UnicastProblem, code: IndexCode) -> IndexCode:
    """Reuse a locality-1 code for ``p`` on ``esup(p)``; children copy the parent's access set."""
    if code.locality(p) > 1:
        raise ValueError(f"lowering needs locality 1, code has {code.locality(p)}")
    single, children = esup(p)
    parent_of = {c: i for i, kids in enumerate(children) for c in kids}
    access_sets, decoders = [], []
    for c, rx in enumerate(single.receivers):
        i = parent_of[c]
        access_sets.append(code.access_sets[i])
        decoders.append(_picked_decoder(code.decoders[i], next(iter(rx.wants))))
    return IndexCode(code.q, code.m, code.ell, code.encoder, tuple(access_sets), tuple(decoders), code.descriptor)


def _picked_decoder(dec: Decoder, j: int) -> Decoder:
    def decode(observed, side):
        got = dec(observed, side)
        return None if got is None else {j: got[j]}

    return decode


# --- table codes and JSON -----------------------------------------------------------


def table_code(p: UnicastProblem, q: int, m: int, ell: int, table: Sequence[Sequence[int]],
               access_sets: Sequence[Sequence[int]]) -> IndexCode:
    """A code given by its full encoder table, with lookup-table decoders synthesized from it.

    ``table[a]`` is the codeword for the ``a``-th assignment of :func:`iter_assignments`.
    A decoder is built only where the observations determine the demand; for
    ambiguous inputs it returns ``None``, which verification reports as a failure.
    """
    table = [tuple(int(s) for s in row) for row in table]
    if len(table) != assignment_count(p, q, m):
        raise ValueError(f"table has {len(table)} rows, expected {assignment_count(p, q, m)}")
    messages = list(p.messages)
    index = {tuple(s for j in messages for s in x[j]): a for a, x in enumerate(iter_assignments(messages, q, m))}

    def encoder(x: Assignment) -> tuple[int, ...]:
        return table[index[tuple(s for j in messages for s in x[j])]]

    access_sets = [tuple(sorted(r)) for r in access_sets]
    decoders = []
    for rx, r in zip(p.receivers, access_sets):
        lookup: dict = {}
        for a, x in enumerate(iter_assignments(messages, q, m)):
            key = (tuple(table[a][k] for k in r), tuple(x[j] for j in sorted(rx.knows)))
            demand = tuple(x[j] for j in sorted(rx.wants))
            lookup.setdefault(key, set()).add(demand)
        decoders.append(_table_decoder(sorted(rx.wants), sorted(rx.knows),
                                       {k: next(iter(v)) for k, v in lookup.items() if len(v) == 1}))
    return IndexCode(q, m, ell, encoder, tuple(access_sets), tuple(decoders),
                     descriptor={"kind": "table", "messages": messages, "table": [list(r) for r in table]})


def _table_decoder(wants: list[int], knows: list[int], lookup: dict) -> Decoder:
    def decode(observed, side):
        key = (tuple(observed), tuple(tuple(side[j]) for j in knows))
        demand = lookup.get(key)
        if demand is None:
            return None
        return dict(zip(wants, demand))

    return decode


def to_json(code: IndexCode, p: UnicastProblem, budget: int | None = None) -> dict:
    """Serialize with explicit decoder tables (one row per reachable input)."""
    if not code.descriptor:
        raise ValueError("code has no encoder descriptor to serialize")
    _check_budget("to_json", assignment_count(p, code.q, code.m) * max(p.n, 1), budget)
    decoders = []
    for i, rx in enumerate(p.receivers):
        knows, wants = sorted(rx.knows), sorted(rx.wants)
        rows = {}
        for x in iter_assignments(p.messages, code.q, code.m):
            obs = code.observe(code.encoder(x), i)
            side = tuple(x[j] for j in knows)
            got = code.decoders[i](obs, {j: x[j] for j in knows})
            if got is not None:
                rows[(obs, side)] = [list(got[j]) for j in wants]
        decoders.append({
            "wants": wants,
            "knows": knows,
            "table": [{"observed": list(o), "side": [list(s) for s in sd], "demand": d}
                      for (o, sd), d in sorted(rows.items())],
        })
    return {
        "q": code.q,
        "m": code.m,
        "ell": code.ell,
        "encoder": code.descriptor,
        "access_sets": [list(r) for r in code.access_sets],
        "decoders": decoders,
    }


def from_json(data: Mapping) -> IndexCode:
    """Rebuild a code from :func:`to_json` output; decoders are the stored tables."""
    q, m, ell = int(data["q"]), int(data["m"]), int(data["ell"])
    enc = data["encoder"]
    if enc["kind"] == "clique_partition":
        cliques = [tuple(c) for c in enc["cliques"]]

        def encoder(x):
            return tuple(sum(x[v][k] for v in c) % q for c in cliques for k in range(m))
    elif enc["kind"] == "table":
        messages = list(enc["messages"])
        table = [tuple(r) for r in enc["table"]]
        index = {tuple(s for j in messages for s in x[j]): a
                 for a, x in enumerate(iter_assignments(messages, q, m))}

        def encoder(x):
            return table[index[tuple(s for j in messages for s in x[j])]]
    else:
        raise ValueError(f"unknown encoder kind {enc['kind']!r}")
    decoders = []
    for d in data["decoders"]:
        lookup = {
            (tuple(row["observed"]), tuple(tuple(s) for s in row["side"])): tuple(tuple(v) for v in row["demand"])
            for row in d["table"]
        }
        decoders.append(_table_decoder(list(d["wants"]), list(d["knows"]), lookup))
    return IndexCode(q, m, ell, encoder, tuple(tuple(r) for r in data["access_sets"]),
                     tuple(decoders), descriptor=dict(enc))
