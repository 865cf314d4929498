import threading
from typing import Iterable, List, Optional, Tuple

from tqdm import tqdm

from lt_influence.config.settings import get_settings


# Values closer than this are treated as a tie
TIE_TOLERANCE = 1e-12


class ProgressTracker:
    """Thread-safe tqdm bar, silent unless SHOW_PROGRESS is enabled."""

    def __init__(self, total: int, desc: str = "Processing", enabled: Optional[bool] = None):
        self.total = total
        self.desc = desc
        self.enabled = get_settings().SHOW_PROGRESS if enabled is None else enabled
        self.lock = threading.Lock()
        self.tqdm_bar = None

    def step(self, amount: int = 1):
        with self.lock:
            if self.tqdm_bar is not None:
                self.tqdm_bar.update(amount)

    def __enter__(self):
        if self.enabled:
            self.tqdm_bar = tqdm(total=self.total, desc=self.desc, leave=False)
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if self.tqdm_bar is not None:
            self.tqdm_bar.close()
            self.tqdm_bar = None


def argmax_ascending(scores: Iterable[Tuple[int, float]]) -> Optional[Tuple[int, float]]:
    """
    Return the (node, score) pair with the highest score.

    Candidates are visited in ascending node id and a later node only wins if
    it beats the current best by more than TIE_TOLERANCE, so ties go to the
    smallest id regardless of the order ``scores`` was produced in.
    """
    best = None
    for node, score in sorted(scores, key=lambda item: item[0]):
        if best is None or score > best[1] + TIE_TOLERANCE:
            best = (node, score)
    return best


def parse_int_list(value: str) -> List[int]:
    """Parse ``"3,7,12"`` into ``[3, 7, 12]``; an empty string gives ``[]``."""
    return [int(token) for token in value.split(",") if token.strip()]


def parse_float_list(value: str) -> List[float]:
    return [float(token) for token in value.split(",") if token.strip()]
