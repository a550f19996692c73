"""
Experiment loader for the MAHH Jump laboratory.
Handles loading and validation of named experiment configurations from JSON files.
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from .models import ExperimentConfig


logger = logging.getLogger(__name__)


class ExperimentLoaderError(Exception):
    """Custom exception for experiment loader errors."""
    pass


class ExperimentNotFoundError(ExperimentLoaderError):
    """Exception raised when an experiment is not found."""
    pass


class ExperimentValidationError(ExperimentLoaderError):
    """Exception raised when experiment data validation fails."""
    pass


class ExperimentLoader:
    """
    Loads and validates experiment configurations from JSON files.

    The file holds {"experiments": [...]}; every entry is validated as an
    ExperimentConfig and addressed by its experiment_id.
    """

    def __init__(self, data_file_path: str = "data/experiments.json"):
        """
        Initialize the ExperimentLoader.

        Args:
            data_file_path: Path to the JSON file containing experiment configurations
        """
        self.data_file_path = Path(data_file_path)
        self._experiments_cache: Optional[Dict[str, ExperimentConfig]] = None

    def _load_experiments_data(self) -> Dict[str, ExperimentConfig]:
        """
        Load and validate experiments from the JSON file.

        Returns:
            Dictionary mapping experiment IDs to ExperimentConfig objects

        Raises:
            ExperimentLoaderError: If the file cannot be read or has the wrong shape
            ExperimentValidationError: If an entry doesn't match the schema
        """
        if not self.data_file_path.exists():
            raise ExperimentLoaderError(f"Experiment file not found: {self.data_file_path}")

        try:
            with open(self.data_file_path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise ExperimentLoaderError(f"Invalid JSON in experiment file: {e}") from e
        except OSError as e:
            raise ExperimentLoaderError(f"Cannot read experiment file {self.data_file_path}: {e}") from e

        if not isinstance(data, dict) or "experiments" not in data:
            raise ExperimentLoaderError("Invalid JSON structure: missing 'experiments' key")

        experiments: Dict[str, ExperimentConfig] = {}
        for entry in data["experiments"]:
            experiment = self.validate_experiment_data(entry)
            if experiment.experiment_id in experiments:
                raise ExperimentValidationError(
                    f"Duplicate experiment ID '{experiment.experiment_id}'"
                )
            experiments[experiment.experiment_id] = experiment

        logger.info(f"Loaded {len(experiments)} experiments from {self.data_file_path}")
        return experiments

    def _experiments(self) -> Dict[str, ExperimentConfig]:
        if self._experiments_cache is None:
            self._experiments_cache = self._load_experiments_data()
        return self._experiments_cache

    def get_experiment_by_id(self, experiment_id: str) -> ExperimentConfig:
        """
        Retrieve an experiment by ID.

        Raises:
            ExperimentNotFoundError: If the ID is empty or unknown
            ExperimentLoaderError: If there's an error loading the data
        """
        if not experiment_id:
            raise ExperimentNotFoundError("Experiment ID cannot be empty")

        experiments = self._experiments()
        if experiment_id not in experiments:
            raise ExperimentNotFoundError(f"Experiment with ID '{experiment_id}' not found")
        return experiments[experiment_id]

    def get_all_experiments(self) -> List[ExperimentConfig]:
        return list(self._experiments().values())

    def get_experiment_ids(self) -> List[str]:
        return list(self._experiments().keys())

    def reload_data(self) -> None:
        """Clear the cache; the file is re-read on next access."""
        self._experiments_cache = None
        logger.info("Experiment cache cleared, will reload on next access")

    def validate_experiment_data(self, experiment_data: Dict[str, Any]) -> ExperimentConfig:
        """
        Validate one experiment entry against the ExperimentConfig schema.

        Raises:
            ExperimentValidationError: If validation fails
        """
        try:
            return ExperimentConfig(**experiment_data)
        except (ValidationError, TypeError) as e:
            experiment_id = experiment_data.get("experiment_id", "unknown") if isinstance(experiment_data, dict) else "unknown"
            raise ExperimentValidationError(
                f"Invalid experiment data for ID {experiment_id}: {e}"
            ) from e
