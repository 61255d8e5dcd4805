import numpy as np
import numpy.typing as npt

def sweep_until_converged(
    indptr: npt.NDArray[np.int64],
    targets: npt.NDArray[np.int64],
    w: npt.NDArray[np.float64],
    is_exit: npt.NDArray[np.uint8],
    epsilon: float,
    max_sweeps: int,
) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.int64], npt.NDArray[np.int64], int, bool]: ...
