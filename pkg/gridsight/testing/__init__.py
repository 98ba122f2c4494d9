# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
import sys
import inspect
import random

import numpy as np
import pytest
import torch

from . import scenes  # noqa: F401


# pytest.main() wrapper to allow running single test file
def main():
    test_file = inspect.getsourcefile(sys._getframe(1))
    sys.exit(pytest.main([test_file] + sys.argv[1:]))


def numpy_assert_close(array_a,
                       array_b,
                       rtol=1e-9,
                       atol=1e-12,
                       max_mismatched_ratio=0.0,
                       verbose=False):
    """
    Assert that two arrays are "close enough," allowing a specified
    percentage of mismatched elements.

    Parameters:
    ----------
    array_a : array_like
        The array under test.
    array_b : array_like
        The reference array.
    rtol : float, optional
        Relative tolerance for comparison. Default is 1e-9.
    atol : float, optional
        Absolute tolerance for comparison. Default is 1e-12.
    max_mismatched_ratio : float, optional
        Maximum ratio of mismatched elements allowed (relative to the total number of elements).
        Default is 0, every element must match.

    Raises:
    -------
    AssertionError:
        If the ratio of mismatched elements exceeds `max_mismatched_ratio`.
    """
    array_a = np.asarray(array_a)
    array_b = np.asarray(array_b)
    assert array_a.shape == array_b.shape, f"Shape mismatch: {array_a.shape} vs {array_b.shape}"

    diff = np.abs(array_a - array_b)
    max_diff = atol + rtol * np.abs(array_b)
    mismatched = diff > max_diff
    num_mismatched = int(mismatched.sum())
    total_elements = array_a.size
    max_allowed_mismatched = int(total_elements * max_mismatched_ratio)

    if verbose:
        print(f"Number of mismatched elements: {num_mismatched} / {total_elements} "
              f"(allowed: {max_allowed_mismatched})")

    if num_mismatched > max_allowed_mismatched:
        raise AssertionError(
            f"Too many mismatched elements: {num_mismatched} > {max_allowed_mismatched} "
            f"({max_mismatched_ratio * 100:.2f}% allowed, but get {num_mismatched / total_elements * 100:.2f}%). "
            f"Greatest absolute difference: {diff.max() if diff.size else 0.0}, "
            f"Greatest relative difference: {(diff / (np.abs(array_b) + 1e-12)).max() if diff.size else 0.0}."
        )
    return True


def set_random_seed(seed: int = 42) -> None:
    random.seed(seed)
    np.random.seed(seed)
    torch.manual_seed(seed)
