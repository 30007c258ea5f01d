"""Worked presentations used by tests, the CLI and the benchmarks."""

from __future__ import annotations

from .macaulay import Presentation, PresentedRing
from .poly import MultiPoly, default_names, poly_from_string


def _presentation(degrees, gens, d, positive, names=None) -> Presentation:
    names = tuple(names or default_names(len(degrees), "x"))
    polys = tuple(poly_from_string(g, names) for g in gens)
    return Presentation(PresentedRing(tuple(degrees), polys, d), tuple(positive), names)


def flag3_borel() -> Presentation:
    return _presentation(
        [1, 1, 1],
        ["x1 + x2 + x3", "x1*x2 + x1*x3 + x2*x3", "x1*x2*x3"],
        3,
        [2, 0, 1],
    )


def flag3_nef() -> Presentation:
    return _presentation(
        [1, 1, 1],
        [
            "x3",
            "-x1**2 + x1*x2 - x2**2 + x2*x3",
            "x1**2*x2 - x1*x2**2 - x1**2*x3 + x1*x2*x3",
        ],
        3,
        [2, 1, 0],
    )


def grassmannian_2_4() -> Presentation:
    return _presentation([1, 2], ["x1**3 - 2*x1*x2", "x1**2*x2 - x2**2"], 4, [0, 2])


def hirzebruch_full(r: int) -> Presentation:
    return _presentation(
        [1, 1, 1, 1],
        ["x1*x3", "x2*x4", "-x1 + x3", f"{r}*x1 + x2 - x4"],
        2,
        [1, 1, 0, 0],
    )


def hirzebruch_reduced(r: int) -> Presentation:
    return _presentation([1, 1], ["x3**2", f"-{r}*x3*x4 + x4**2"], 2, [1, 1], names=["x3", "x4"])


def _y(text: str, n: int, names=None) -> MultiPoly:
    return poly_from_string(text, names or default_names(n, "y"))


def expected_dual_generators() -> dict[str, tuple[Presentation, MultiPoly]]:
    """Presentations paired with their known dual generators."""
    out = {
        "flag3_borel": (
            flag3_borel(),
            _y("-y1**2*y2 + y1**2*y3 + y1*y2**2 - y1*y3**2 - y2**2*y3 + y2*y3**2", 3),
        ),
        "flag3_nef": (flag3_nef(), _y("y1**2*y2 + y1*y2**2", 3)),
        "gr24": (grassmannian_2_4(), _y("2*y1**4 + y1**2*y2 + y2**2", 2)),
    }
    for r in range(4):
        out[f"hirzebruch_full_{r}"] = (
            hirzebruch_full(r),
            _y(f"-{r}*y2**2 + {r}*y4**2 + y1*y2 + y2*y3 + y3*y4 + y1*y4", 4),
        )
        out[f"hirzebruch_reduced_{r}"] = (
            hirzebruch_reduced(r),
            _y(f"{r}*y4**2 + y3*y4", 2, ["y3", "y4"]),
        )
    return out


def hirzebruch_volume(r: int, reduced: bool = False) -> MultiPoly:
    if reduced:
        return _y(f"{r}*y4**2 + 2*y3*y4", 2, ["y3", "y4"])
    return _y(f"-{r}*y2**2 + {r}*y4**2 + 2*y1*y2 + 2*y2*y3 + 2*y3*y4 + 2*y1*y4", 4)


BUILTIN = {
    "flag3_borel": flag3_borel,
    "flag3_nef": flag3_nef,
    "gr24": grassmannian_2_4,
    **{f"hirzebruch_full_{r}": (lambda r=r: hirzebruch_full(r)) for r in range(4)},
    **{f"hirzebruch_reduced_{r}": (lambda r=r: hirzebruch_reduced(r)) for r in range(4)},
}
