"""Random jigsaw puzzles: generation, reconstruction, and oracles."""

from .grid import (
    Assembly,
    Direction,
    EdgeId,
    Piece,
    PieceBag,
    Puzzle,
    disassemble,
    is_feasible,
    piece_at,
)
from .gen import generate, generate_variant

__all__ = [
    "Assembly",
    "Direction",
    "EdgeId",
    "Piece",
    "PieceBag",
    "Puzzle",
    "disassemble",
    "generate",
    "generate_variant",
    "is_feasible",
    "piece_at",
]

__version__ = "0.1.0"
