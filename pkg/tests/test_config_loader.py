"""Unit tests for the YAML configuration loader."""
import pytest

from modules.config_loader import ConfigLoader


@pytest.fixture
def config_dir(tmp_path):
    (tmp_path / "verification.yaml").write_text(
        'nmax_cap: "${COMTET_NMAX_CAP}"\n'
        "checks:\n"
        "  corner-sequence: {nmax: 8}\n"
        "  cubic-g: {order: 8}\n"
    )
    (tmp_path / "patterns.yaml").write_text(
        "classes:\n"
        '  catalan: ["123", "132"]\n'
        "expected_shapes:\n"
        '  "213": [lower_triangular]\n'
        "conjecture_candidates:\n"
        '  - {patterns: "2431,4231", iar: true}\n'
    )
    return tmp_path


def test_missing_directory(tmp_path):
    """Test that a missing config directory is reported."""
    with pytest.raises(FileNotFoundError):
        ConfigLoader(str(tmp_path / "absent"))


def test_default_directory_from_env(config_dir, monkeypatch):
    """Test that $COMTET_CONFIG_DIR selects the directory."""
    monkeypatch.setenv("COMTET_CONFIG_DIR", str(config_dir))
    assert ConfigLoader().config_dir == config_dir


def test_catalog_accessors(config_dir):
    """Test the pattern catalog getters."""
    loader = ConfigLoader(str(config_dir))
    assert loader.get_classes() == {'catalan': ["123", "132"]}
    assert loader.get_expected_shapes() == {"213": ["lower_triangular"]}
    assert loader.get_conjecture_candidates() == [{'patterns': "2431,4231", 'iar': True}]


def test_caching_and_reload(config_dir):
    """Test that files are cached until reload_configs."""
    loader = ConfigLoader(str(config_dir))
    first = loader.get_classes()
    (config_dir / "patterns.yaml").write_text("classes: {}\n")
    assert loader.get_classes() == first
    loader.reload_configs()
    assert loader.get_classes() == {}


def test_invalid_and_missing_files(config_dir):
    """Test errors for broken or absent YAML files."""
    (config_dir / "broken.yaml").write_text("key: [unclosed\n")
    loader = ConfigLoader(str(config_dir))
    with pytest.raises(ValueError):
        loader.load_yaml("broken.yaml")
    with pytest.raises(FileNotFoundError):
        loader.load_yaml("absent.yaml")


def test_check_bounds_without_cap(config_dir, monkeypatch):
    """Test that an unset cap keeps the configured bounds."""
    monkeypatch.delenv("COMTET_NMAX_CAP", raising=False)
    loader = ConfigLoader(str(config_dir))
    assert loader.get_check_bounds("corner-sequence") == {'nmax': 8}
    assert loader.get_check_bounds("unknown") == {}


def test_check_bounds_with_cap(config_dir, monkeypatch):
    """Test that $COMTET_NMAX_CAP lowers nmax but leaves order alone."""
    monkeypatch.setenv("COMTET_NMAX_CAP", "5")
    loader = ConfigLoader(str(config_dir))
    assert loader.get_check_bounds("corner-sequence") == {'nmax': 5}
    assert loader.get_check_bounds("cubic-g") == {'order': 8}


def test_empty_env_var_keeps_placeholder(config_dir, monkeypatch):
    """Test that an empty variable counts as unset."""
    monkeypatch.setenv("COMTET_NMAX_CAP", "")
    loader = ConfigLoader(str(config_dir))
    assert loader.get_verification_config()['nmax_cap'] == "${COMTET_NMAX_CAP}"
    assert loader.validate_env_vars()[1].count("COMTET_NMAX_CAP") == 1


def test_placeholder_defaults(tmp_path, monkeypatch):
    """Test ${VAR:-default} and placeholders embedded in longer strings."""
    monkeypatch.delenv("COMTET_TEST_UNSET", raising=False)
    monkeypatch.setenv("COMTET_TEST_NAME", "schroder")
    (tmp_path / "patterns.yaml").write_text(
        'cap: "${COMTET_TEST_UNSET:-6}"\n'
        'label: "class-${COMTET_TEST_NAME}"\n'
        "size: 3\n"
    )
    catalog = ConfigLoader(str(tmp_path)).get_pattern_catalog()
    assert catalog == {'cap': "6", 'label': "class-schroder", 'size': 3}
