"""Configuration file discovery and merging"""

import yaml

from vsslab.utils.config import DEFAULTS, find_config, load_config, merge_config


def test_merge_keeps_unset_keys():
    merged = merge_config(DEFAULTS, {"network": {"step_budget": 10}})
    assert merged["network"]["step_budget"] == 10
    assert merged["network"]["max_rounds"] == DEFAULTS["network"]["max_rounds"]
    assert DEFAULTS["network"]["step_budget"] == 2_000_000


def test_found_upward(tmp_path):
    (tmp_path / "vsslab.yaml").write_text(yaml.safe_dump({"field": {"p": 101}}))
    nested = tmp_path / "a" / "b"
    nested.mkdir(parents=True)
    path = find_config(nested)
    assert path == tmp_path / "vsslab.yaml"
    config = load_config(path)
    assert config["field"]["p"] == 101
    assert config["harness"]["seed"] == 1


def test_empty_file(tmp_path):
    path = tmp_path / "vsslab.yaml"
    path.write_text("")
    assert load_config(path) == DEFAULTS
