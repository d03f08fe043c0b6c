"""Configuration loading utilities

This module provides configuration loading that searches for vsslab.yaml
in the following order:
1. Current directory and upward (until reaching root)
2. ~/.vsslab/config.yaml
3. Default configuration (built-in defaults below)

Values found in a file are merged over the defaults, so a file only needs the
keys it changes.

Usage:
    from vsslab.utils.config import CONFIG

    p = CONFIG["field"]["p"]
"""

import copy
from pathlib import Path
from typing import Optional

import yaml

CONFIG_NAME = "vsslab.yaml"

DEFAULTS: dict = {
    "field": {"p": 2147483647},
    "network": {
        # None means 4 x pending-queue high-water mark
        "fairness_bound": None,
        "step_budget": 2_000_000,
        "max_rounds": 32,
    },
    "harness": {
        "trials": 25,
        "seed": 1,
        "privacy_max_states": 10_000_000,
    },
    "storage": {
        "database_path": "files/dbs/vsslab.db",
        "auto_init": True,
    },
    "logging": {"level": "WARNING"},
}


def find_config(start_path: Optional[Path] = None) -> Optional[Path]:
    """
    Find vsslab.yaml by searching upward from start_path.

    Search order:
    1. Current directory and upward
    2. ~/.vsslab/config.yaml
    3. None (will use defaults)

    Args:
        start_path: Starting directory (default: current working directory)

    Returns:
        Path to the config file if found, None otherwise
    """
    current = start_path or Path.cwd()

    # Search upward until we find vsslab.yaml or hit root
    while current != current.parent:
        config_path = current / CONFIG_NAME
        if config_path.exists():
            return config_path
        current = current.parent

    home_config = Path.home() / ".vsslab" / "config.yaml"
    if home_config.exists():
        return home_config

    return None


def merge_config(base: dict, override: dict) -> dict:
    """Deep-merge override into a copy of base"""
    merged = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge_config(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(config_path: Optional[Path] = None) -> dict:
    """
    Load configuration from vsslab.yaml.

    Returns the built-in defaults if no config file is found.

    Args:
        config_path: Explicit file to read (default: result of find_config)

    Returns:
        Configuration dictionary with field, network, harness, storage and
        logging sections
    """
    config_path = config_path or find_config()

    if config_path is None:
        return copy.deepcopy(DEFAULTS)

    with open(config_path) as f:
        return merge_config(DEFAULTS, yaml.safe_load(f) or {})


# Global config instance
# This is loaded once when the module is imported
CONFIG = load_config()
