"""
Data and settings management for pfrees.
Loads packaged JSON data and the optional settings file.
"""
import json
import os
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field, fields
from typing import Any, Dict, Mapping, Optional

from .error_handler import ParseError

PACKAGE_DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")


class DataManager:
    """Manages loading and saving of JSON data files"""

    def __init__(self, data_dir: Optional[str] = None):
        self.data_dir = data_dir or PACKAGE_DATA_DIR

    def load_json(self, filename: str) -> Dict[str, Any]:
        """Load JSON data file"""
        filepath = os.path.join(self.data_dir, filename)
        try:
            with open(filepath, 'r') as f:
                return json.load(f)
        except json.JSONDecodeError as e:
            raise ParseError(f"{filepath}: {e}") from None

    def save_json(self, filename: str, data: Dict[str, Any]) -> str:
        """Save data to JSON file"""
        os.makedirs(self.data_dir, exist_ok=True)
        filepath = os.path.join(self.data_dir, filename)
        with open(filepath, 'w') as f:
            json.dump(data, f, indent=4)
        return filepath

    def load_claims(self) -> Dict[str, Any]:
        return self.load_json("claims.json")


@dataclass
class Settings:
    budget_seconds: float = 60.0
    jobs: int = field(default_factory=lambda: os.cpu_count() or 1)
    certificate_dir: str = "certificates"
    order_pool_sample: int = 50
    order_pool_seed: int = 0xC0FFEE
    log_file: str = "pfrees.log"
    log_level: str = "INFO"

    def override(self, **values: Any) -> "Settings":
        """Copy with every non-None value applied."""
        data = {f.name: getattr(self, f.name) for f in fields(self)}
        data.update({k: v for k, v in values.items() if v is not None})
        return Settings(**data)


def load_settings(path: Optional[str] = None, environ: Mapping[str, str] = os.environ) -> Settings:
    """Settings from defaults, then the settings file, then PFREES_BUDGET.

    Raises:
        ParseError: On malformed TOML, unknown keys or a bad PFREES_BUDGET
    """
    settings = Settings()
    if path:
        try:
            with open(path, 'rb') as f:
                data = tomllib.load(f)
        except tomllib.TOMLDecodeError as e:
            raise ParseError(f"{path}: {e}") from None
        known = {f.name: f.type for f in fields(Settings)}
        unknown = sorted(set(data) - set(known))
        if unknown:
            raise ParseError(f"{path}: unknown settings {', '.join(unknown)}")
        settings = settings.override(**data)
    budget = environ.get("PFREES_BUDGET")
    if budget:
        try:
            settings = settings.override(budget_seconds=float(budget))
        except ValueError:
            raise ParseError(f"PFREES_BUDGET must be a number of seconds, got {budget!r}") from None
    return settings
