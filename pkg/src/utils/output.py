"""Output path management and dataset / manifest writers"""
#%%
#
import json
from pathlib import Path

from loguru import logger
import numpy as np
import pandas as pd

from nonstatic.errors import OutputUnwritable


#%%
#
FLOAT_FORMAT = "%.17g"


class OutputConfig:
    """Centralized output path management for one run prefix"""
    def __init__(self, prefix: str | Path) -> None:
        self.prefix = Path(prefix)
        self.output_dir = self.prefix.parent
        self.stem = self.prefix.name
        if not self.stem:
            raise OutputUnwritable(f"Output prefix must name a file stem, got '{prefix}'.")

    def ensure_directories(self) -> None:
        """
        Purpose:
            Create the output directory if it doesn't exist
        Raises:
            OutputUnwritable: If the directory cannot be created.
        """
        try:
            self.output_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise OutputUnwritable(f"Cannot create output directory {self.output_dir}: {e}") from e

    def get_dataset_path(self, dataset: str) -> Path:
        """
        Purpose:
            Get standardized dataset file path
        Args:
            dataset: Dataset name (e.g., 'phase_evolution', 'field_map')
        Returns:
            Path object for the CSV file
        """
        return self.output_dir / f"{self.stem}_{dataset}.csv"

    def get_manifest_path(self) -> Path:
        return self.output_dir / f"{self.stem}_manifest.json"

    def get_report_path(self) -> Path:
        return self.output_dir / f"{self.stem}_checks.json"

    def get_log_path(self) -> Path:
        return self.output_dir / f"{self.stem}.log"


#%%
# Writers.
def write_dataset(frame: pd.DataFrame, path: Path) -> Path:
    """
    Purpose:
        Write a dataset as CSV with one header row and 17 significant digits.
    Raises:
        OutputUnwritable: If the file cannot be written.
    """
    try:
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    except OSError as e:
        raise OutputUnwritable(f"Cannot write dataset {path}: {e}") from e
    logger.info(f"Wrote {len(frame)} rows to {path}")
    return path


def to_jsonable(value):
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(item) for item in value.tolist()]
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, float) and not np.isfinite(value):
        return None
    return value


def write_json(payload: dict, path: Path) -> Path:
    """
    Purpose:
        Write a JSON document with sorted keys.
    Raises:
        OutputUnwritable: If the file cannot be written.
    """
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            json.dump(to_jsonable(payload), handle, indent=2, sort_keys=True)
            handle.write("\n")
    except OSError as e:
        raise OutputUnwritable(f"Cannot write {path}: {e}") from e
    logger.info(f"Wrote {path}")
    return path
