"""
Geometry of the circle: distances, arcs, balls and Voronoi cells.
"""

from spatialpoll.geometry.circle import (
    Arc,
    ArcSet,
    CirclePoint,
    arc_distance,
    atom_index,
    ball_measure,
    ball_union,
    cell_ball_measure,
    cell_ball_measures,
    cell_measures,
    covering_arcs,
    neighbor_gaps,
    pairwise_distances,
    union_balls_measure,
    voronoi_cells,
    wrap,
)

__all__ = [
    "Arc",
    "ArcSet",
    "CirclePoint",
    "arc_distance",
    "atom_index",
    "ball_measure",
    "ball_union",
    "cell_ball_measure",
    "cell_ball_measures",
    "cell_measures",
    "covering_arcs",
    "neighbor_gaps",
    "pairwise_distances",
    "union_balls_measure",
    "voronoi_cells",
    "wrap",
]
