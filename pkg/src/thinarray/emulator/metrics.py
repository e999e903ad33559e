import numpy as np

NEAR_ZERO = 1e-6


def nrmse(y, y_hat) -> float:
    """
    Root mean square of the relative prediction error.

    nRMSE = sqrt(mean(((y - y_hat) / y) ** 2))

    Args:
        y: Reference (simulated) values
        y_hat: Predicted values

    Returns:
        Non-negative nRMSE

    Raises:
        ValueError: On length mismatch, empty input, or any |y| < 1e-6
    """
    y = np.asarray(y, dtype=float).ravel()
    y_hat = np.asarray(y_hat, dtype=float).ravel()
    if y.size != y_hat.size:
        raise ValueError(f"Length mismatch: {y.size} references vs {y_hat.size} predictions")
    if y.size == 0:
        raise ValueError("nRMSE needs at least one value")
    near_zero = np.abs(y) < NEAR_ZERO
    if near_zero.any():
        first = int(np.argmax(near_zero))
        raise ValueError(
            f"Reference value {y[first]} at index {first} is too close to zero for a relative error"
        )
    return float(np.sqrt(np.mean(((y - y_hat) / y) ** 2)))
