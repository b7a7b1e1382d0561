"""The (n,m)-graph data model.

An (n,m)-graph has ``n`` arc types and ``m`` edge types.  Adjacency labels
live in ``{1, ..., 2n+m}``: ``2i`` is an arc of type ``i`` seen from its tail,
``2i-1`` is the same arc seen from its head, and ``2n+j`` is an edge of type
``j`` (identical from both ends).  ``label(u, v) == a`` means ``v`` is an
``a``-neighbor of ``u``.

Graphs are immutable.  Vertices are the integers ``0 .. order-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

MAX_ORDER = 256


class NMGraphError(ValueError):
    """Base class for malformed graphs and illegal operations."""


class LabelRangeError(NMGraphError):
    pass


class LoopError(NMGraphError):
    pass


class DuplicateAdjacencyError(NMGraphError):
    pass


class ExcludedCaseError(NMGraphError):
    """Raised for (n,m) = (0,1), where the planar bound does not apply."""


class NMGParseError(NMGraphError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True, order=True)
class Params:
    n: int
    m: int

    def __post_init__(self):
        if self.n < 0 or self.m < 0:
            raise NMGraphError(f"negative type count in (n,m) = ({self.n},{self.m})")
        if self.n + self.m < 1:
            raise NMGraphError("need at least one arc or edge type")

    @property
    def p(self) -> int:
        """Number of adjacency labels, 2n + m."""
        return 2 * self.n + self.m

    @property
    def excluded(self) -> bool:
        return (self.n, self.m) == (0, 1)

    @property
    def labels(self) -> range:
        return range(1, self.p + 1)

    def is_arc(self, label: int) -> bool:
        return label <= 2 * self.n and label % 2 == 0

    def is_reverse_arc(self, label: int) -> bool:
        return label <= 2 * self.n and label % 2 == 1

    def is_edge(self, label: int) -> bool:
        return 2 * self.n < label <= self.p

    def check_label(self, label: int) -> None:
        if not isinstance(label, int) or not 1 <= label <= self.p:
            raise LabelRangeError(
                f"label {label!r} outside 1..{self.p} for (n,m) = ({self.n},{self.m})"
            )


def reverse_type(label: int, params: Params) -> int:
    """Label of ``(v, u)`` given the label of ``(u, v)``."""
    params.check_label(label)
    if label > 2 * params.n:
        return label
    return label - 1 if label % 2 == 0 else label + 1


def order_bound(params: Params) -> int:
    """Largest possible order of a planar (n,m)-complete graph: 3p^2 + p + 1."""
    if params.excluded:
        raise ExcludedCaseError(
            "(n,m) = (0,1): planar complete graphs are plain cliques, at most K4"
        )
    p = params.p
    return 3 * p * p + p + 1


@dataclass(frozen=True)
class Violation:
    kind: str  # "vertex", "loop", "range", "pairing", "missing-reverse"
    pair: tuple[int, int]
    message: str


def validate_adjacency(
    params: Params, order: int, adjacency: Mapping[tuple[int, int], int]
) -> list[Violation]:
    """Every invariant violation of a raw ordered-pair label map."""
    out: list[Violation] = []
    for (u, v), a in sorted(adjacency.items()):
        if not (0 <= u < order and 0 <= v < order):
            out.append(Violation("vertex", (u, v), f"vertex outside 0..{order - 1}"))
            continue
        if u == v:
            out.append(Violation("loop", (u, v), "loop"))
            continue
        if not isinstance(a, int) or not 1 <= a <= params.p:
            out.append(Violation("range", (u, v), f"label {a!r} outside 1..{params.p}"))
            continue
        back = adjacency.get((v, u))
        if back is None:
            out.append(Violation("missing-reverse", (v, u), "reverse pair absent"))
        elif (
            isinstance(back, int)
            and 1 <= back <= params.p
            and back != reverse_type(a, params)
            and u > v
        ):
            # report once, at the pair with the larger first coordinate
            out.append(
                Violation(
                    "pairing",
                    (u, v),
                    f"label {a} at {(u, v)} does not reverse label {back} at {(v, u)}",
                )
            )
    return out


class NMGraph:
    """Immutable (n,m)-graph on vertices ``0 .. order-1``.

    Internally every vertex keeps a dense row of labels (0 = not adjacent),
    an integer bitmask of its neighbors and one bitmask per label.
    """

    __slots__ = ("params", "order", "_rows", "_nbr", "_lab", "_hash")

    def __init__(
        self,
        params: Params,
        order: int,
        adjacency: Mapping[tuple[int, int], int] | None = None,
    ):
        if not 0 <= order <= MAX_ORDER:
            raise NMGraphError(f"order {order} outside 0..{MAX_ORDER}")
        adjacency = adjacency or {}
        problems = validate_adjacency(params, order, adjacency)
        if problems:
            first = problems[0]
            cls = {
                "loop": LoopError,
                "range": LabelRangeError,
            }.get(first.kind, NMGraphError)
            raise cls(f"{first.kind} violation at {first.pair}: {first.message}")
        rows = [[0] * order for _ in range(order)]
        for (u, v), a in adjacency.items():
            rows[u][v] = a
        self._init(params, order, rows)

    def _init(self, params: Params, order: int, rows: list[list[int]]) -> None:
        self.params = params
        self.order = order
        self._rows = tuple(tuple(r) for r in rows)
        p = params.p
        nbr = []
        lab = []
        for u in range(order):
            masks = [0] * (p + 1)
            full = 0
            for v, a in enumerate(self._rows[u]):
                if a:
                    masks[a] |= 1 << v
                    full |= 1 << v
            nbr.append(full)
            lab.append(tuple(masks))
        self._nbr = tuple(nbr)
        self._lab = tuple(lab)
        self._hash = None

    @classmethod
    def _from_rows(cls, params: Params, rows: Iterable[Iterable[int]]) -> NMGraph:
        # trusted path for internal code that already maintains the invariants
        g = cls.__new__(cls)
        rows = [list(r) for r in rows]
        g._init(params, len(rows), rows)
        return g

    @classmethod
    def from_pairs(
        cls, params: Params, order: int, pairs: Iterable[tuple[int, int, int]]
    ) -> NMGraph:
        """Build from ``(u, v, label)`` triples, one per unordered adjacent pair."""
        if not 0 <= order <= MAX_ORDER:
            raise NMGraphError(f"order {order} outside 0..{MAX_ORDER}")
        rows = [[0] * order for _ in range(order)]
        for u, v, a in pairs:
            _check_new_pair(params, order, rows, u, v, a)
            rows[u][v] = a
            rows[v][u] = reverse_type(a, params)
        return cls._from_rows(params, rows)

    @classmethod
    def empty(cls, params: Params, order: int) -> NMGraph:
        return cls.from_pairs(params, order, ())

    # -- queries -----------------------------------------------------------

    def label(self, u: int, v: int) -> int | None:
        return self._rows[u][v] or None

    def adjacent(self, u: int, v: int) -> bool:
        return self._rows[u][v] != 0

    def row(self, u: int) -> tuple[int, ...]:
        """Labels from ``u`` to every vertex, 0 where not adjacent."""
        return self._rows[u]

    def neighbor_mask(self, v: int) -> int:
        return self._nbr[v]

    def label_mask(self, v: int, alpha: int) -> int:
        return self._lab[v][alpha]

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(w for w, a in enumerate(self._rows[v]) if a)

    def alpha_neighbors(self, v: int, alpha: int) -> frozenset[int]:
        self._check_vertex(v)
        self.params.check_label(alpha)
        return frozenset(w for w, a in enumerate(self._rows[v]) if a == alpha)

    def degree(self, v: int, alpha: int | None = None) -> int:
        if alpha is None:
            return self._nbr[v].bit_count()
        return self._lab[v][alpha].bit_count()

    def pairs(self) -> Iterator[tuple[int, int, int]]:
        """``(u, v, label(u, v))`` for every adjacent pair with ``u < v``."""
        for u in range(self.order):
            row = self._rows[u]
            for v in range(u + 1, self.order):
                if row[v]:
                    yield u, v, row[v]

    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self._nbr) // 2

    def adjacency(self) -> dict[tuple[int, int], int]:
        return {
            (u, v): a
            for u in range(self.order)
            for v, a in enumerate(self._rows[u])
            if a
        }

    def underlying_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v, _ in self.pairs()]

    # -- derived graphs ----------------------------------------------------

    def add_adjacency(self, u: int, v: int, label: int) -> NMGraph:
        rows = [list(r) for r in self._rows]
        _check_new_pair(self.params, self.order, rows, u, v, label)
        rows[u][v] = label
        rows[v][u] = reverse_type(label, self.params)
        return NMGraph._from_rows(self.params, rows)

    def induced(self, vertices: Iterable[int]) -> NMGraph:
        """Induced subgraph, vertices renumbered in increasing order."""
        vs = sorted(set(vertices))
        for v in vs:
            self._check_vertex(v)
        return NMGraph._from_rows(
            self.params, [[self._rows[u][v] for v in vs] for u in vs]
        )

    def relabel(self, perm: list[int]) -> NMGraph:
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        if sorted(perm) != list(range(self.order)):
            raise NMGraphError("not a permutation of the vertex set")
        rows = [[0] * self.order for _ in range(self.order)]
        for u in range(self.order):
            for v, a in enumerate(self._rows[u]):
                rows[perm[u]][perm[v]] = a
        return NMGraph._from_rows(self.params, rows)

    def _check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.order):
            raise NMGraphError(f"vertex {v!r} outside 0..{self.order - 1}")

    def __eq__(self, other):
        if not isinstance(other, NMGraph):
            return NotImplemented
        return self.params == other.params and self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.params, self._rows))
        return self._hash

    def __repr__(self):
        return (
            f"NMGraph(n={self.params.n}, m={self.params.m}, order={self.order}, "
            f"pairs={list(self.pairs())})"
        )


def _check_new_pair(params, order, rows, u, v, a) -> None:
    for w in (u, v):
        if not (isinstance(w, int) and 0 <= w < order):
            raise NMGraphError(f"vertex {w!r} outside 0..{order - 1} in pair {(u, v)}")
    if u == v:
        raise LoopError(f"loop requested at {(u, v)}")
    if rows[u][v]:
        raise DuplicateAdjacencyError(f"pair {(u, v)} is already adjacent")
    try:
        params.check_label(a)
    except LabelRangeError as exc:
        raise LabelRangeError(f"{exc} in pair {(u, v)}") from None


def add_adjacency(g: NMGraph, u: int, v: int, label: int) -> NMGraph:
    return g.add_adjacency(u, v, label)


def alpha_neighbors(g: NMGraph, v: int, alpha: int) -> frozenset[int]:
    return g.alpha_neighbors(v, alpha)


def validate(g: NMGraph) -> list[Violation]:
    return validate_adjacency(g.params, g.order, g.adjacency())


# -- .nmg text format ---------------------------------------------------------


def write_nmg(g: NMGraph) -> bytes:
    """Canonical .nmg bytes: pairs sorted by (min, max), arcs written tail first."""
    lines = []
    for u, v, a in g.pairs():
        if g.params.is_reverse_arc(a):
            lines.append(f"{v} {u} {reverse_type(a, g.params)}")
        else:
            lines.append(f"{u} {v} {a}")
    head = f"nmg {g.params.n} {g.params.m} {g.order} {len(lines)}"
    return ("\n".join([head, *lines]) + "\n").encode("utf-8")


def _ints(fields: list[str], lineno: int, line: str) -> list[int]:
    out = []
    col = 1
    for f in fields:
        col = line.index(f, col - 1) + 1
        try:
            out.append(int(f))
        except ValueError:
            raise NMGParseError(f"expected an integer, got {f!r}", lineno, col) from None
    return out


def parse_nmg(data: bytes | str) -> NMGraph:
    text = data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data
    lines = text.split("\n")
    if not lines or not lines[0].startswith("nmg"):
        raise NMGParseError("header must start with 'nmg'", 1)
    fields = lines[0].split()
    if fields[0] != "nmg" or len(fields) != 5:
        raise NMGParseError("header must be 'nmg <n> <m> <order> <pair-count>'", 1)
    n, m, order, count = _ints(fields[1:], 1, lines[0])
    try:
        params = Params(n, m)
    except NMGraphError as exc:
        raise NMGParseError(str(exc), 1) from None
    if not 0 <= order <= MAX_ORDER:
        raise NMGParseError(f"order {order} outside 0..{MAX_ORDER}", 1)
    rows = [[0] * order for _ in range(order)]
    seen = 0
    for lineno, line in enumerate(lines[1:], start=2):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = stripped.split()
        if len(fields) != 3:
            raise NMGParseError("expected '<u> <v> <label>'", lineno)
        u, v, a = _ints(fields, lineno, line)
        if params.is_reverse_arc(a) and 1 <= a <= params.p:
            raise NMGParseError(
                f"reverse-arc label {a}: write the arc from its tail as "
                f"'{v} {u} {a + 1}'",
                lineno,
                line.rindex(fields[2]) + 1,
            )
        try:
            _check_new_pair(params, order, rows, u, v, a)
        except NMGraphError as exc:
            raise NMGParseError(str(exc), lineno) from None
        rows[u][v] = a
        rows[v][u] = reverse_type(a, params)
        seen += 1
    if seen != count:
        raise NMGParseError(f"header announces {count} pairs, found {seen}", 1)
    return NMGraph._from_rows(params, rows)


def read_nmg(path) -> NMGraph:
    with open(path, "rb") as fh:
        return parse_nmg(fh.read())


def save_nmg(g: NMGraph, path) -> None:
    with open(path, "wb") as fh:
        fh.write(write_nmg(g))
