"""Reference constructions and their published target values.

Each fixture bundles a metacirculant parameter set with the values the
construction is expected to reproduce: edge counts, reference edge tables
where one was published, graph invariants, the even/odd weight class, and
the minimum distance of the bordered code (flagged infeasible where an
exact sweep is beyond a desk machine: the n = 81 and n = 94 codes took
days of CPU in the original computations).

Reference edge tables are stored under the interleaved vertex order
((i, j) -> j*m + i + 1), which is the order the published tables turn out
to use; the hexacode figure uses the block order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

from .codes import TypeClass
from .formats import parse_edge_table, parse_generator_matrix
from .graphs import MetacirculantSpec, SimpleGraph, build_metacirculant


@dataclass(frozen=True)
class Fixture:
    """A reference construction and everything it is expected to reproduce."""

    name: str
    spec: MetacirculantSpec
    edge_count: int
    valency: int
    diameter: int
    girth: int
    clique_number: int
    type_class: TypeClass
    distance: int  # minimum distance of the bordered code
    distance_feasible: bool  # exact sweep within desk scale?
    table_file: Optional[str] = None
    table_order: str = "interleaved"
    matrix_file: Optional[str] = None  # bordered generator matrix, if published
    special_counts: dict[int, int] = field(default_factory=dict)
    unbordered_distance: Optional[int] = None
    source: str = "published reference values for this construction"

    @property
    def n(self) -> int:
        return self.spec.n

    def build(self, order: Optional[str] = None) -> SimpleGraph:
        return build_metacirculant(self.spec, order=order or self.table_order)

    def load_table(self) -> Optional[SimpleGraph]:
        if self.table_file is None:
            return None
        return parse_edge_table(_read_data(self.table_file))

    def load_matrix(self):
        if self.matrix_file is None:
            return None
        return parse_generator_matrix(_read_data(self.matrix_file))


def _read_data(filename: str) -> str:
    return resources.files("metacirc.data").joinpath(filename).read_text()


_S = MetacirculantSpec.make

FIXTURES: tuple[Fixture, ...] = (
    Fixture(
        name="hexacode",
        spec=_S(2, 3, 1, {1, 2}, {0}),
        edge_count=9,
        valency=3,
        diameter=2,
        girth=3,
        clique_number=3,
        type_class=TypeClass.I,
        distance=3,
        distance_feasible=True,
        table_file="edges_hexacode.txt",
        table_order="block",
        matrix_file="matrix_hexacode_bordered.txt",
        special_counts={3: 3},
        unbordered_distance=4,
    ),
    Fixture(
        name="G28",
        spec=_S(2, 14, 13, {5, 6, 8, 9}, {0, 1, 3, 6, 7, 9, 11}),
        edge_count=154,
        valency=11,
        diameter=2,
        girth=3,
        clique_number=4,
        type_class=TypeClass.I,
        distance=10,
        distance_feasible=True,
        table_file="edges_g28.txt",
    ),
    Fixture(
        name="G36_1",
        spec=_S(2, 18, 17, {1, 3, 9, 15, 17}, {2, 6, 8, 11, 15, 16}),
        edge_count=198,
        valency=11,
        diameter=3,
        girth=3,
        clique_number=4,
        type_class=TypeClass.I,
        distance=11,
        distance_feasible=True,
        table_file="edges_g36_1.txt",
        special_counts={11: 252},
    ),
    Fixture(
        name="G36_2",
        spec=_S(2, 18, 17, {1, 2, 3, 5, 13, 15, 16, 17},
                {0, 1, 2, 3, 5, 8, 9, 11, 12, 13, 15}),
        edge_count=342,
        valency=19,
        diameter=2,
        girth=3,
        clique_number=5,
        type_class=TypeClass.I,
        distance=11,
        distance_feasible=True,
        table_file="edges_g36_2.txt",
        special_counts={11: 270},
    ),
    Fixture(
        name="G80_1",
        spec=_S(8, 10, 7, {1, 4, 6, 9}, {0, 1, 2, 3, 6, 7, 8},
                {0, 2, 3, 4, 8, 9}, {0, 6}, {0, 1, 2, 4, 6, 8, 9}),
        edge_count=1640,
        valency=41,
        diameter=2,
        girth=3,
        clique_number=8,
        type_class=TypeClass.I,
        distance=20,
        distance_feasible=False,
        table_file="edges_g80_1.txt",
    ),
    Fixture(
        name="G80_2",
        spec=_S(8, 10, 3, {4, 5, 6}, {0, 1, 2, 4, 5, 7, 9},
                {0, 1, 5, 8, 9}, {0, 2, 3, 7}, {1, 2, 3, 4, 5, 6, 7, 8, 9}),
        edge_count=1760,
        valency=44,
        diameter=2,
        girth=3,
        clique_number=7,
        type_class=TypeClass.I,
        distance=20,
        distance_feasible=False,
    ),
    Fixture(
        name="G80_3",
        spec=_S(10, 8, 5, {2, 3, 5, 6}, {3}, {2, 4, 6, 7},
                {5, 6}, {0, 1, 2, 3, 4, 6}, {0, 2, 5, 6, 7}),
        edge_count=1400,
        valency=35,
        diameter=2,
        girth=3,
        clique_number=9,
        type_class=TypeClass.I,
        distance=20,
        distance_feasible=False,
    ),
    Fixture(
        name="G93",
        spec=_S(3, 31, 1, {10, 12, 13, 15, 16, 18, 19, 21},
                {4, 6, 7, 9, 12, 14, 15, 18, 19, 21}),
        edge_count=1302,
        valency=28,
        diameter=2,
        girth=3,
        clique_number=4,
        type_class=TypeClass.II,
        distance=22,
        distance_feasible=False,
        table_file="edges_g93.txt",
    ),
)

_BY_NAME = {f.name.lower(): f for f in FIXTURES}


def names() -> list[str]:
    return [f.name for f in FIXTURES]


def get(name: str) -> Fixture:
    try:
        return _BY_NAME[name.lower()]
    except KeyError:
        raise KeyError(
            f"unknown fixture {name!r}; available: {', '.join(names())}") from None
