import contextlib

import joblib
import numpy as np
import torch

from rich.console import Console
from rich.progress import (
    BarColumn,
    MofNCompleteColumn,
    Progress,
    SpinnerColumn,
    TaskProgressColumn,
    TextColumn,
    TimeElapsedColumn,
    TimeRemainingColumn,
)

# Largest period for which class tables are enumerated
MAX_TABLE_N = 10**6
# Largest period for O(N^2) correlation sweeps
MAX_CORRELATION_N = 2 * 10**4
# Default cap used by the command line and the verification grid
DEFAULT_MAX_N = 5000
# Largest number of elements in one batch of the correlation kernel
MAX_TENSOR_SIZE = 1e7

# `rich` console used throughout the codebase.
# It writes to stderr so that stdout only carries data.
console = Console(stderr=True)


class SizeLimitError(ValueError):
    """Raised when a period exceeds a configured size cap."""


# `rich` progress bar used throughout the codebase
def _get_progress(**kwargs):
    """Return a custom `rich` progress bar."""
    return Progress(
        SpinnerColumn(),
        TaskProgressColumn(),
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        MofNCompleteColumn(),
        TimeElapsedColumn(),
        "<",
        TimeRemainingColumn(),
        console=console,
        **kwargs,
    )


@contextlib.contextmanager
def rich_progress_joblib(description=None, total=None, verbose=False):
    """Advance a `rich` progress bar each time joblib completes a batch."""
    if description is None:
        description = "Processing..."

    progress = _get_progress()
    if verbose:
        task_id = progress.add_task(description, total=total)

    class BatchCompletionCallback(joblib.parallel.BatchCompletionCallBack):
        def __call__(self, *args, **kwargs):
            if verbose:
                progress.update(task_id, advance=self.batch_size)
            return super().__call__(*args, **kwargs)

    old_callback = joblib.parallel.BatchCompletionCallBack

    try:
        joblib.parallel.BatchCompletionCallBack = BatchCompletionCallback
        if verbose:
            progress.start()

        yield progress
    finally:
        if verbose:
            progress.stop()
        joblib.parallel.BatchCompletionCallBack = old_callback


def _get_device(device="auto"):
    """Resolve "auto" to the first available gpu, cpu otherwise."""
    if device == "auto":
        if torch.cuda.is_available():
            return torch.device("cuda", 0)
        return torch.device("cpu")
    return torch.device(device)


def _make_tensor(x, device=None, dtype=torch.int64):
    """Turn x into an integer torch.Tensor on the requested device."""
    if isinstance(x, torch.Tensor):
        tensor = x
    elif isinstance(x, (np.ndarray, list, tuple)):
        # copies, so read-only arrays are accepted silently
        tensor = torch.tensor(x)
    else:
        raise ValueError(
            f"Expected np.ndarray, torch.Tensor or sequence, got {type(x)}"
        )

    if tensor.is_floating_point():
        raise ValueError(
            f"Expected integer values, got tensor of type {tensor.dtype}"
        )

    return tensor.to(device=device, dtype=dtype)


def _frozen_array(values, dtype=np.int64):
    """Return a read-only numpy copy of values."""
    array = np.array(values, dtype=dtype)
    array.setflags(write=False)
    return array


def check_size(n, max_n, what="period"):
    """Raise SizeLimitError if n is above max_n."""
    if max_n is not None and n > max_n:
        raise SizeLimitError(
            f"{what} {n} exceeds the configured cap of {max_n}"
        )
