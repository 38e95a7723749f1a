"""YAML configuration for pattern catalogs and verification bounds.

Values may reference environment variables as ``${VAR}`` or ``${VAR:-default}``; a ``.env``
file in the working directory is loaded first.
"""
import logging
import os
import re
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_DIR = Path(__file__).resolve().parent.parent / "config"

OPTIONAL_ENV_VARS = ("COMTET_CONFIG_DIR", "COMTET_NMAX_CAP")

_PLACEHOLDER = re.compile(r"\$\{(\w+)(?::-([^}]*))?\}")


def _expand(text: str) -> str:
    def lookup(match: re.Match) -> str:
        value = os.getenv(match.group(1))
        if value:
            return value
        default = match.group(2)
        return default if default is not None else match.group(0)

    return _PLACEHOLDER.sub(lookup, text)


def _as_cap(value: Any) -> Optional[int]:
    if isinstance(value, bool):
        return None
    if isinstance(value, int):
        return value
    if isinstance(value, str) and value.strip().isdigit():
        return int(value)
    return None


class ConfigLoader:
    """Cached access to the YAML files of one config directory."""

    def __init__(self, config_dir: Optional[str] = None):
        """
        Args:
            config_dir: Directory holding patterns.yaml and verification.yaml; defaults to
                $COMTET_CONFIG_DIR, then the repository's config/ directory
        """
        self.config_dir = Path(config_dir or os.getenv("COMTET_CONFIG_DIR") or DEFAULT_CONFIG_DIR)
        self._configs: Dict[str, Dict[str, Any]] = {}

        if not self.config_dir.is_dir():
            raise FileNotFoundError(f"Configuration directory not found: {self.config_dir}")

    def load_yaml(self, filename: str) -> Dict[str, Any]:
        """Parse one file of the config directory, expanding placeholders.

        Args:
            filename: File name, e.g. 'patterns.yaml'

        Returns:
            Parsed mapping; an empty file gives {}

        Raises:
            FileNotFoundError: If the file is missing
            ValueError: If the file is not valid YAML
        """
        if filename not in self._configs:
            path = self.config_dir / filename
            if not path.is_file():
                raise FileNotFoundError(f"Configuration file not found: {path}")
            try:
                data = yaml.safe_load(path.read_text())
            except yaml.YAMLError as e:
                raise ValueError(f"Invalid YAML in {path}: {e}")
            self._configs[filename] = self._replace_env_vars(data or {})
            logger.debug(f"Loaded {path}")
        return self._configs[filename]

    def _replace_env_vars(self, node: Any) -> Any:
        """Expand placeholders in every string; unset or empty variables without a default
        keep their placeholder."""
        if isinstance(node, dict):
            return {key: self._replace_env_vars(value) for key, value in node.items()}
        if isinstance(node, list):
            return [self._replace_env_vars(item) for item in node]
        if isinstance(node, str):
            return _expand(node)
        return node

    def get_pattern_catalog(self) -> Dict[str, Any]:
        """Named pattern classes, expected matrix shapes, conjecture candidates."""
        return self.load_yaml("patterns.yaml")

    def get_verification_config(self) -> Dict[str, Any]:
        return self.load_yaml("verification.yaml")

    def get_check_bounds(self, name: str) -> Dict[str, int]:
        """Default bounds of one verification check, capped by ``nmax_cap`` when it is set.

        Args:
            name: Check name, e.g. 'schroder-matrices'

        Returns:
            Bounds such as {'nmax': 8}; empty when the check has no entry
        """
        config = self.get_verification_config()
        bounds = dict((config.get("checks") or {}).get(name) or {})
        cap = _as_cap(config.get("nmax_cap"))
        if cap is not None and "nmax" in bounds:
            bounds["nmax"] = min(bounds["nmax"], cap)
        return bounds

    def get_conjecture_candidates(self) -> List[Dict[str, Any]]:
        return self.get_pattern_catalog().get("conjecture_candidates", [])

    def get_expected_shapes(self) -> Dict[str, List[str]]:
        return self.get_pattern_catalog().get("expected_shapes", {})

    def get_classes(self) -> Dict[str, List[str]]:
        return self.get_pattern_catalog().get("classes", {})

    def reload_configs(self):
        """Forget cached files so the next access reads them again."""
        self._configs.clear()

    def validate_env_vars(self) -> tuple[bool, list[str]]:
        """Report optional environment variables that are unset.

        Returns:
            Tuple of (all_set, unset_vars); nothing is required, so callers only log these
        """
        unset = [var for var in OPTIONAL_ENV_VARS if not os.getenv(var)]
        return not unset, unset
