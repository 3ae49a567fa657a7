"""Self-testing ROCN matrices built by concatenating orthogonal blocks, and named presets."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from rocnbell.errors import OddDimensionError, RocnError, SizeLimitError
from rocnbell.rocn import RocnMatrix
from rocnbell.symspan import gram_schmidt_family

DEFAULT_MAX_M = 12
BLOCK_TOLERANCE = 1e-12
PRESETS = ("chsh", "elegant")


@dataclass(frozen=True)
class BlockPlan:
    m: int
    blocks: tuple[np.ndarray, ...]
    include_identity_block: bool

    def __post_init__(self):
        expected = self.m + 1 if self.include_identity_block else self.m
        if len(self.blocks) != expected:
            raise ValueError(f"expected {expected} blocks, got {len(self.blocks)}")
        eye = np.eye(self.m)
        for ell, block in enumerate(self.blocks):
            residual = np.max(np.abs(block.T @ block - eye))
            if residual > BLOCK_TOLERANCE:
                raise ValueError(f"block {ell} is not orthogonal (residual {residual:.3e})")

    def concatenate(self) -> np.ndarray:
        return np.hstack(self.blocks)


def check_even_m(m: int, max_m: int = DEFAULT_MAX_M):
    if not isinstance(m, (int, np.integer)) or m < 2:
        raise RocnError(f"m must be an integer >= 2, got {m!r}")
    if m % 2:
        raise OddDimensionError(f"m must be even, got m={m}")
    if m > max_m:
        raise SizeLimitError(f"m must be <= {max_m}, got m={m}")


def block_plan(m: int, include_identity_block: bool = True, max_m: int = DEFAULT_MAX_M) -> BlockPlan:
    """Blocks ``O^(0) = I`` (optional) and ``O^(l) = [a_l1 ... a_lm]`` for ``l = 1..m``."""
    check_even_m(m, max_m)
    blocks = [np.eye(m)] if include_identity_block else []
    blocks.extend(gram_schmidt_family(m, ell).vectors.T for ell in range(1, m + 1))
    return BlockPlan(m, tuple(blocks), include_identity_block)


def matrix_label(m: int, include_identity_block: bool) -> str:
    return f"construct-v1;m={m};identity={str(include_identity_block).lower()}"


def build_self_testing_matrix(
    m: int, include_identity_block: bool = True, max_m: int = DEFAULT_MAX_M
) -> RocnMatrix:
    """The ``m x m(m+1)`` self-testing ROCN matrix (``m x m^2`` without the identity block)."""
    plan = block_plan(m, include_identity_block, max_m)
    return RocnMatrix(plan.concatenate(), label=matrix_label(m, include_identity_block))


def preset(name: str) -> RocnMatrix:
    """Named ROCN matrices: ``"chsh"`` (2 x 2) and ``"elegant"`` (3 x 4)."""
    key = name.lower()
    if key == "chsh":
        h = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
    elif key == "elegant":
        # Tetrahedron vertices (+-1, +-1, +-1)/sqrt(3) with an even number of minus signs.
        h = np.array(
            [
                [1.0, 1.0, -1.0, -1.0],
                [1.0, -1.0, 1.0, -1.0],
                [1.0, -1.0, -1.0, 1.0],
            ]
        ) / np.sqrt(3.0)
    else:
        raise RocnError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    return RocnMatrix(h, label=f"preset;{key}")
