"""Square-grid board graphs with 8-direction adjacency and rays.

`goBoard` and `chessBoard` share one topology; the kind only matters for
rendering (pieces on intersections vs. in cells). Sites are indexed
row-major with row 0 at the bottom edge, so `site = row * side + col`.
"""

from __future__ import annotations

from functools import lru_cache


class InvalidSize(ValueError):
    pass


class OutOfBounds(IndexError):
    pass


DIRECTIONS = ("N", "NE", "E", "SE", "S", "SW", "W", "NW")
# (row delta, col delta); row 0 is the bottom edge so N increases the row
_OFFSETS = {
    "N": (1, 0),
    "NE": (1, 1),
    "E": (0, 1),
    "SE": (-1, 1),
    "S": (-1, 0),
    "SW": (-1, -1),
    "W": (0, -1),
    "NW": (1, -1),
}

_DIR_INDEX = {name: i for i, name in enumerate(DIRECTIONS)}


def opposite(direction: str) -> str:
    """N <-> S, NE <-> SW, etc."""
    return DIRECTIONS[_DIR_INDEX[direction] ^ 4]


class Topology:
    """Immutable board graph; build via `build_board`, then share freely."""

    def __init__(self, kind: str, side: int):
        if side < 1:
            raise InvalidSize(f"board side must be positive, got {side}")
        self.kind = kind
        self.side = side
        self.site_count = side * side
        # neighbor_table[dir_index][site] is the neighboring site or -1
        table = []
        for name in DIRECTIONS:
            dr, dc = _OFFSETS[name]
            row = []
            for site in range(self.site_count):
                r, c = divmod(site, side)
                r += dr
                c += dc
                row.append(r * side + c if 0 <= r < side and 0 <= c < side else -1)
            table.append(tuple(row))
        self.neighbor_table = tuple(table)
        # rays[site][dir_index]: successive neighbors outward, nearest first
        rays = []
        for site in range(self.site_count):
            per_dir = []
            for d in range(8):
                chain = []
                cur = self.neighbor_table[d][site]
                while cur >= 0:
                    chain.append(cur)
                    cur = self.neighbor_table[d][cur]
                per_dir.append(tuple(chain))
            rays.append(tuple(per_dir))
        self.rays = tuple(rays)

    def _check_site(self, site: int) -> None:
        if not 0 <= site < self.site_count:
            raise OutOfBounds(f"site {site} not in 0..{self.site_count - 1}")

    def neighbor(self, site: int, direction: str) -> int | None:
        self._check_site(site)
        found = self.neighbor_table[_DIR_INDEX[direction]][site]
        return found if found >= 0 else None

    def neighbors_of(self, site: int) -> tuple[int, ...]:
        self._check_site(site)
        return tuple(
            s for d in range(8) if (s := self.neighbor_table[d][site]) >= 0
        )

    def ray(self, site: int, direction: str) -> tuple[int, ...]:
        """Maximal chain of neighbors in one direction, excluding `site`."""
        self._check_site(site)
        return self.rays[site][_DIR_INDEX[direction]]

    def coord_to_index(self, row: int, col: int) -> int:
        if not (0 <= row < self.side and 0 <= col < self.side):
            raise OutOfBounds(f"(row {row}, col {col}) not on a side-{self.side} board")
        return row * self.side + col

    def index_to_coord(self, site: int) -> tuple[int, int]:
        self._check_site(site)
        return divmod(site, self.side)

    def __repr__(self) -> str:
        return f"Topology({self.kind!r}, {self.side})"


@lru_cache(maxsize=None)
def build_board(kind: str, side: int) -> Topology:
    """Construct (or fetch the cached) board graph for a kind and side."""
    return Topology(kind, side)
