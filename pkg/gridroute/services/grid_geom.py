"""
Grid geometry

Coordinates, norms and square rings on the k-dimensional grid, plus the
control/ancilla layout used by the ring-compaction circuits.

Points are plain tuples of ints. In two dimensions the first coordinate is
the column and the second the row, so (0, 0) is the bottom-left corner.
"""

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Literal, Mapping, Tuple

GridPoint = Tuple[int, ...]
Norm = Literal["l1", "linf"]

# D_0..D_3: up the left side, along the top, down the right side, back along the bottom.
DIRECTIONS: Tuple[GridPoint, ...] = ((0, 1), (1, 0), (0, -1), (-1, 0))


class GeometryError(Exception):
    """Raised for invalid grid sides, ring indices or point dimensions."""

    pass


def grid_point(*coords: int) -> GridPoint:
    """Build a point from integer coordinates."""
    if not coords:
        raise GeometryError("a grid point needs at least one coordinate")
    return tuple(int(c) for c in coords)


def add(a: GridPoint, b: GridPoint) -> GridPoint:
    _check_same_dim(a, b)
    return tuple(x + y for x, y in zip(a, b))


def sub(a: GridPoint, b: GridPoint) -> GridPoint:
    _check_same_dim(a, b)
    return tuple(x - y for x, y in zip(a, b))


def distance(a: GridPoint, b: GridPoint, norm: Norm = "l1") -> int:
    """
    Distance between two points.

    Args:
        a: First point.
        b: Second point, same dimension as a.
        norm: "l1" (sum of coordinate gaps) or "linf" (largest gap).

    Returns:
        The integer distance.

    Raises:
        GeometryError: If the dimensions differ or the norm is unknown.
    """
    _check_same_dim(a, b)
    gaps = [abs(x - y) for x, y in zip(a, b)]
    if norm == "l1":
        return sum(gaps)
    if norm == "linf":
        return max(gaps, default=0)
    raise GeometryError(f"unknown norm {norm!r}")


def is_adjacent(a: GridPoint, b: GridPoint) -> bool:
    return len(a) == len(b) and distance(a, b) == 1


def in_bounds(p: GridPoint, m: int) -> bool:
    return all(0 <= c < m for c in p)


def neighbours(p: GridPoint, m: int) -> List[GridPoint]:
    """Axis neighbours of p that lie inside the grid of side m."""
    result = []
    for axis in range(len(p)):
        for step in (-1, 1):
            q = p[:axis] + (p[axis] + step,) + p[axis + 1 :]
            if in_bounds(q, m):
                result.append(q)
    return result


def all_points(m: int, dim: int) -> Iterator[GridPoint]:
    return itertools.product(range(m), repeat=dim)


def center(m: int, dim: int = 2) -> GridPoint:
    _check_odd_side(m)
    h = (m - 1) // 2
    return (h,) * dim


def _check_same_dim(a: GridPoint, b: GridPoint) -> None:
    if len(a) != len(b):
        raise GeometryError(f"dimension mismatch: {a} has {len(a)}, {b} has {len(b)}")


def _check_odd_side(m: int) -> None:
    if m < 3 or m % 2 == 0:
        raise GeometryError(f"grid side must be odd and at least 3, got {m}")


@dataclass(frozen=True)
class RingDescriptor:
    """A square ring of the m x m grid, walked clockwise from its bottom-left corner."""

    m: int
    ring_index: int
    points: Tuple[GridPoint, ...]
    corners: Tuple[GridPoint, ...]
    directions: Tuple[GridPoint, ...] = DIRECTIONS

    @property
    def last_index(self) -> int:
        return len(self.points) - 1

    @property
    def side(self) -> int:
        return self.m - 2 * self.ring_index

    def __len__(self) -> int:
        return len(self.points)

    def at(self, index: int) -> GridPoint:
        """Point at a ring index, wrapping around."""
        return self.points[index % len(self.points)]

    def side_point(self, side: int, offset: int) -> GridPoint:
        """Point `offset` steps past corner C_side along D_side."""
        return self.at((side % 4) * (self.side - 1) + offset)

    def index_of(self, p: GridPoint) -> int:
        try:
            return self.points.index(p)
        except ValueError as e:
            raise GeometryError(f"{p} is not on ring {self.ring_index} of m={self.m}") from e


def ring_points(m: int, ring_index: int) -> RingDescriptor:
    """
    Enumerate ring `ring_index` of the m x m grid.

    Ring k holds the points at l-inf distance (m-1)/2 - k from the centre.
    The innermost ring (k = (m-1)/2) degenerates to the centre itself.

    Raises:
        GeometryError: If m is even or smaller than 3, or the ring index is out of range.
    """
    _check_odd_side(m)
    h = (m - 1) // 2
    if not 0 <= ring_index <= h:
        raise GeometryError(f"ring index {ring_index} out of range for m={m}")

    k = ring_index
    if k == h:
        c = (h, h)
        return RingDescriptor(m=m, ring_index=k, points=(c,), corners=(c, c, c, c))

    far = m - k - 1
    corners = ((k, k), (k, far), (far, far), (far, k))
    points: List[GridPoint] = []
    for corner, step in zip(corners, DIRECTIONS):
        for t in range(far - k):
            points.append((corner[0] + t * step[0], corner[1] + t * step[1]))
    return RingDescriptor(m=m, ring_index=k, points=tuple(points), corners=corners)


@dataclass(frozen=True)
class ControlLayout:
    """
    Placement of the controls, ancillas and target of a controlled-U circuit.

    `partners` maps every control to an adjacent ancilla that is free when the
    construction starts; the higher-dimensional reduction accumulates along
    the partner's column.
    """

    m: int
    dim: int
    controls: FrozenSet[GridPoint]
    ancillas: FrozenSet[GridPoint]
    target: GridPoint
    partners: Mapping[GridPoint, GridPoint] = field(default_factory=dict, compare=False)

    @property
    def n(self) -> int:
        return len(self.controls)

    def ordered_controls(self) -> List[GridPoint]:
        return sorted(self.controls)


def control_layout(m: int, dim: int = 2) -> ControlLayout:
    """
    Controls, ancillas and target for a grid of odd side m in `dim` dimensions.

    In two dimensions the controls sit on the odd ring indices of every ring
    outside the central 3x3 block (or on the four mid-sides when m = 3). In
    higher dimensions the (dim-1) layout is repeated on every hyperplane at
    an odd offset from the centre along the last axis.

    Raises:
        GeometryError: If m is even or below 3, or dim < 2.
    """
    _check_odd_side(m)
    if dim < 2:
        raise GeometryError(f"control layouts need dim >= 2, got {dim}")

    partners = _planar_partners(m)
    h = (m - 1) // 2
    for _ in range(dim - 2):
        partners = {
            s + (z,): a + (z,)
            for s, a in partners.items()
            for z in range(m)
            if (z - h) % 2 == 1
        }

    target = center(m, dim)
    controls = frozenset(partners)
    ancillas = frozenset(p for p in all_points(m, dim) if p not in controls and p != target)
    return ControlLayout(
        m=m,
        dim=dim,
        controls=controls,
        ancillas=ancillas,
        target=target,
        partners=partners,
    )


def _planar_partners(m: int) -> Dict[GridPoint, GridPoint]:
    h = (m - 1) // 2
    rings = [0] if m == 3 else range(h - 1)
    partners: Dict[GridPoint, GridPoint] = {}
    for k in rings:
        ring = ring_points(m, k)
        for i in range(1, len(ring), 2):
            partners[ring.at(i)] = ring.at(i + 1)
    return partners


def bounding_box(points: Iterable[GridPoint]) -> Tuple[GridPoint, GridPoint]:
    """Componentwise min and max corners of a non-empty point set."""
    pts = list(points)
    if not pts:
        raise GeometryError("bounding box of an empty point set")
    dims = {len(p) for p in pts}
    if len(dims) != 1:
        raise GeometryError("bounding box of points with mixed dimensions")
    low = tuple(min(c) for c in zip(*pts))
    high = tuple(max(c) for c in zip(*pts))
    return low, high
