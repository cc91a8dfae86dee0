"""Jordan signatures of (g, A, lambda) from canonical block data."""

from typing import List, Sequence

import numpy as np

from .errors import ValidationError
from .models import BlockSignature, CanonicalBlock, JordanSignatures


def block_varsigma(size: int, epsilon: int) -> int:
    if size % 2 == 0:
        return size // 2
    return (size - epsilon) // 2


def block_varrho(size: int, epsilon: int) -> int:
    if size % 2:
        return (size - 1) // 2
    return size // 2 - 1 if epsilon > 0 else size // 2


def block_tau(size: int, epsilon: int) -> int:
    # (1 + epsilon * (-1)^(size + 1)) / 2
    return (1 + epsilon * (-1) ** (size + 1)) // 2


def jordan_signatures(blocks: Sequence[CanonicalBlock]) -> JordanSignatures:
    """Sum the per-block closed formulas for varsigma, varrho and tau.

    Args:
        blocks: All canonical blocks of one real eigenvalue

    Raises:
        ValidationError: If the list is empty or mixes eigenvalues
    """
    if not blocks:
        raise ValidationError("blocks_nonempty", "jordan signatures need at least one block")
    eigenvalue = blocks[0].eigenvalue
    if any(b.eigenvalue != eigenvalue for b in blocks):
        raise ValidationError(
            "single_eigenvalue",
            "blocks of different eigenvalues: "
            + ", ".join(sorted({f"{b.eigenvalue:.6g}" for b in blocks})),
        )
    per_block = tuple(
        BlockSignature(
            size=b.size,
            epsilon=b.epsilon,
            varsigma=block_varsigma(b.size, b.epsilon),
            varrho=block_varrho(b.size, b.epsilon),
            tau=block_tau(b.size, b.epsilon),
        )
        for b in blocks
    )
    return JordanSignatures(
        eigenvalue=eigenvalue,
        varsigma=sum(b.varsigma for b in per_block),
        varrho=sum(b.varrho for b in per_block),
        tau=sum(b.tau for b in per_block),
        per_block=per_block,
    )


def generalized_signature(blocks: Sequence[CanonicalBlock]) -> int:
    """Signature of g on the generalized eigenspace: odd blocks carry epsilon."""
    return sum(b.epsilon for b in blocks if b.size % 2)


def degenerate_block_form(size: int, epsilon: int) -> np.ndarray:
    """Matrix of b_(lambda, i) in the block basis.

    First row and column vanish; the lower right (size - 1) block is epsilon
    times the sip matrix. Its index equals varrho_i.
    """
    form = np.zeros((size, size))
    if size > 1:
        form[1:, 1:] = epsilon * np.fliplr(np.eye(size - 1))
    return form


def signatures_by_eigenvalue(blocks: Sequence[CanonicalBlock]) -> List[JordanSignatures]:
    """Group blocks by eigenvalue (input order) and sign each group."""
    groups: List[List[CanonicalBlock]] = []
    for block in blocks:
        if groups and groups[-1][0].eigenvalue == block.eigenvalue:
            groups[-1].append(block)
        else:
            groups.append([block])
    return [jordan_signatures(group) for group in groups]
