import pytest

from emotrack.config import ServiceConfig, load_config
from emotrack.errors import ConfigError


def write_config(tmp_path, text):
    path = tmp_path / "config.yaml"
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_defaults_plus_secret_are_valid():
    config = load_config(env={}, overrides={"token_secret": "s"})
    assert config.provider_mode == "demo"
    assert config.storage_mode == "memory"
    assert (config.host, config.port) == ("127.0.0.1", 8000)
    assert config.role_cache_ttl == 60.0
    assert config.stage_cache_ttl == 300.0


def test_file_values_are_read(tmp_path):
    path = write_config(
        tmp_path,
        """
listen: {host: 0.0.0.0, port: 9000}
token_secret: file-secret
provider:
  mode: local
  roster: /etc/roster.yaml
storage: {mode: file, path: /var/db.sqlite}
role_cache_ttl: 5
cors_origins: [http://localhost:5173]
""",
    )
    config = load_config(path, env={})
    assert config.host == "0.0.0.0"
    assert config.port == 9000
    assert config.token_secret == "file-secret"
    assert config.provider_mode == "local"
    assert config.roster_path == "/etc/roster.yaml"
    assert config.db_path == "/var/db.sqlite"
    assert config.role_cache_ttl == 5.0
    assert config.cors_origins == ("http://localhost:5173",)


def test_environment_beats_file(tmp_path):
    path = write_config(tmp_path, "token_secret: from-file\nlisten: {port: 9000}\n")
    config = load_config(
        path,
        env={"EMOTRACK_TOKEN_SECRET": "from-env", "EMOTRACK_PORT": "9100"},
    )
    assert config.token_secret == "from-env"
    assert config.port == 9100


def test_overrides_beat_environment(tmp_path):
    path = write_config(tmp_path, "token_secret: from-file\n")
    config = load_config(
        path,
        env={"EMOTRACK_PORT": "9100"},
        overrides={"port": 9200},
    )
    assert config.port == 9200
    assert config.token_secret == "from-file"


def test_none_overrides_are_ignored():
    config = load_config(env={"EMOTRACK_TOKEN_SECRET": "s"}, overrides={"port": None})
    assert config.port == 8000


def test_env_csv_and_numeric_parsing():
    config = load_config(
        env={
            "EMOTRACK_TOKEN_SECRET": "s",
            "EMOTRACK_PROVIDER": "trello",
            "EMOTRACK_TRELLO_KEY": "k",
            "EMOTRACK_TRELLO_TOKEN": "t",
            "EMOTRACK_TRELLO_BOARDS": "b1, b2 ,b3",
            "EMOTRACK_STAGE_CACHE_TTL": "12.5",
            "EMOTRACK_CORS_ORIGINS": "http://a,http://b",
        }
    )
    assert config.trello_boards == ("b1", "b2", "b3")
    assert config.stage_cache_ttl == 12.5
    assert config.cors_origins == ("http://a", "http://b")


def test_validation_collects_every_problem_at_once():
    with pytest.raises(ConfigError) as err:
        load_config(
            env={},
            overrides={
                "provider_mode": "local",  # but no roster
                "storage_mode": "file",  # but no path
                "port": 99999,
            },
        )
    text = str(err.value)
    assert "token_secret" in text
    assert "roster path" in text
    assert "database path" in text
    assert "port out of range" in text


@pytest.mark.parametrize(
    "overrides,needle",
    [
        ({"provider_mode": "carrier-pigeon"}, "provider mode"),
        ({"storage_mode": "tape"}, "storage mode"),
        ({"provider_mode": "trello"}, "trello provider mode requires"),
        ({"roster_path": "/tmp/r.yaml"}, "provider mode is not 'local'"),
        ({"trello_key": "k"}, "provider mode is not 'trello'"),
        ({"db_path": "/tmp/x.db"}, "storage mode is not 'file'"),
        ({"role_cache_ttl": -1.0}, "TTLs"),
    ],
)
def test_contradictory_modes_are_rejected(overrides, needle):
    with pytest.raises(ConfigError) as err:
        load_config(env={}, overrides={"token_secret": "s", **overrides})
    assert needle in str(err.value)


def test_bad_env_number_is_a_config_error():
    with pytest.raises(ConfigError) as err:
        load_config(env={"EMOTRACK_TOKEN_SECRET": "s", "EMOTRACK_PORT": "eighty"})
    assert "EMOTRACK_PORT" in str(err.value)


def test_missing_config_file_is_a_config_error(tmp_path):
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "nope.yaml"), env={})


def test_non_mapping_config_file_is_rejected(tmp_path):
    path = write_config(tmp_path, "- a\n- list\n")
    with pytest.raises(ConfigError):
        load_config(path, env={})


def test_config_is_immutable():
    config = load_config(env={}, overrides={"token_secret": "s"})
    with pytest.raises(AttributeError):
        config.port = 1234


def test_empty_env_values_fall_through(tmp_path):
    path = write_config(tmp_path, "token_secret: file-secret\n")
    config = load_config(path, env={"EMOTRACK_TOKEN_SECRET": ""})
    assert config.token_secret == "file-secret"
