# polyfib/config.py
"""
Configuration for polyfib.

Reads an optional YAML file, expands environment variable references and
merges the result over :mod:`polyfib.defaults`. The module-level helpers
(:func:`get_setting`, :func:`get_default_prec`, ...) share one manager.
"""

import copy
import os
import logging
from pathlib import Path
from typing import Dict, Any, Optional, List, Tuple, Union
from .defaults import settings # noqa: F401

try:
    import yaml
except ImportError:
    raise ImportError("PyYAML is required. Install with: pip install PyYAML")

logger = logging.getLogger(__name__)

PREC_ENV_VAR = 'POLYFIB_PREC'

_DEFAULTS = copy.deepcopy(settings)


def _expand_env_var(value: Any) -> Any:
    """
    Resolve a whole-string ``${VAR}`` reference, recursing into dicts and lists.

    ``${VAR}`` must be set; ``${VAR:fallback}`` uses ``fallback`` (possibly
    empty) when it is not. Strings that merely contain a reference are left
    alone.

    Raises:
        ValueError: A required variable is not set
    """
    if isinstance(value, dict):
        return {k: _expand_env_var(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_expand_env_var(v) for v in value]
    if not (isinstance(value, str) and value.startswith('${') and value.endswith('}')):
        return value

    name, sep, fallback = value[2:-1].partition(':')
    if sep:
        return os.environ.get(name, fallback)
    if name not in os.environ:
        raise ValueError(f"Environment variable {name} must be set (referenced as {value})")
    return os.environ[name]


def _merge(base: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    """Recursive dict merge; nested setting blocks are merged, not replaced."""
    merged = dict(base)
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class ConfigManager:
    """
    Manage polyfib configuration from YAML files.

    File Layout
    -----------
    ::

        # polyfib.yml
        settings:
          default_prec: 192
          series_cutoff: 0.75
          abel:
            levels: 8
            prec: 64
          logging:
            directory: ./logs
            level: INFO

        identities:
          - ./my_identities.yml   # extra registry files

    Search Order
    ------------
    The first file that exists wins:

    1. ``config_file``, which must exist when given
    2. ``./polyfib.yml`` (current directory)
    3. ``./polyfib.yaml`` (current directory)
    4. ``~/.config/polyfib.yml`` (user config directory)
    5. ``~/.config/polyfib.yaml`` (user config directory)

    When no file exists the built-in defaults from :mod:`polyfib.defaults` apply
    and ``config_file`` is None.

    Parameters
    ----------
    config_file : str or Path, optional
        Explicit YAML file; None searches the locations above.

    Example
    -------
    ::

        from polyfib.config import ConfigManager

        mgr = ConfigManager('/path/to/polyfib.yml')
        levels = mgr.get_setting('abel.levels')
    """

    def __init__(self, config_file: Optional[Union[str, Path]] = None):
        self.config_file = self._find_config_file(config_file)
        self.config = self._load_config() if self.config_file else {'settings': {}, 'identities': []}
        self._apply_settings()

    def _find_config_file(self, config_file: Optional[Union[str, Path]]) -> Optional[Path]:
        """Find the configuration file."""
        if config_file:
            path = Path(config_file).expanduser()
            if not path.exists():
                raise FileNotFoundError(f"Config file not found: {config_file}")
            return path

        candidates = [
            Path("polyfib.yml"),
            Path("polyfib.yaml"),
            Path.home() / ".config" / "polyfib.yml",
            Path.home() / ".config" / "polyfib.yaml"
        ]

        for candidate in candidates:
            if candidate.exists():
                return candidate

        logger.debug("No polyfib config file found, using built-in defaults")
        return None

    def _load_config(self) -> Dict[str, Any]:
        """Load and validate configuration file."""
        try:
            with open(self.config_file, 'r') as f:
                config = yaml.safe_load(f) or {}
            if not isinstance(config, dict):
                raise ValueError(f"Invalid config file {self.config_file}.")

            for section, kind in (('settings', dict), ('identities', list)):
                if config.get(section) is None:
                    config[section] = kind()
                if not isinstance(config[section], kind):
                    raise ValueError(f"Invalid config file {self.config_file}: "
                                     f"'{section}' must be a {'dictionary' if kind is dict else 'list'}")

            config['settings'] = _expand_env_var(config['settings'])

            prec = config['settings'].get('default_prec')
            if prec is not None and (not str(prec).isdigit() or int(prec) < 64):
                raise ValueError(f"'default_prec' must be an integer >= 64, got {prec!r}")

            logger.info(f"Loaded config from {self.config_file}")
            return config
        except Exception as e:
            raise ValueError(f"Failed to load config file {self.config_file}: {e}")

    def _apply_settings(self) -> None:
        """Apply global settings from config on top of the built-in defaults."""
        self.settings = _merge(_DEFAULTS, self.config.get('settings', {}))
        settings.clear()
        settings.update(copy.deepcopy(self.settings))

    def get_setting(self, key: str, default: Any = None) -> Any:
        """
        Get a setting value from the config.

        Args:
            key: Setting key (supports dot notation like 'abel.levels')
            default: Default value if key not found

        Returns:
            Setting value, the built-in default, or ``default``

        Example:
            levels = config.get_setting('abel.levels', 8)
        """
        value = self.settings
        for k in key.split('.'):
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default
        return value

    def identity_files(self) -> List[Path]:
        """Extra registry files, resolved relative to the config file."""
        base = self.config_file.parent if self.config_file else Path.cwd()
        files = []
        for entry in self.config.get('identities', []):
            path = Path(_expand_env_var(entry)).expanduser()
            files.append(path if path.is_absolute() else base / path)
        return files


_config_manager: Optional[ConfigManager] = None


def _manager(config_file: Optional[Union[str, Path]] = None) -> ConfigManager:
    global _config_manager
    if config_file:
        return ConfigManager(config_file)
    if _config_manager is None:
        _config_manager = ConfigManager()
    return _config_manager


def set_config_file(config_file: Optional[Union[str, Path]]) -> None:
    """Set the configuration file to use globally. None re-runs the default search."""
    global _config_manager
    _config_manager = ConfigManager(config_file)


def get_setting(key: str, default: Any = None, config_file: Optional[Union[str, Path]] = None) -> Any:
    """
    Get a setting value from configuration.

    Args:
        key: Setting key (supports dot notation like 'logging.level')
        default: Default value if key not found
        config_file: Optional path to config file

    Returns:
        Setting value or default

    Example:
        cutoff = get_setting('series_cutoff', 0.75)
    """
    return _manager(config_file).get_setting(key, default)


def get_identity_files() -> List[Path]:
    return _manager().identity_files()


def get_default_prec() -> int:
    """
    Default working precision in bits.

    ``POLYFIB_PREC`` wins over the ``default_prec`` setting, which wins over the
    built-in default.

    Raises:
        ValueError: If the environment variable is not an integer >= 64
    """
    env = os.environ.get(PREC_ENV_VAR)
    if env not in (None, ''):
        try:
            prec = int(env)
        except ValueError:
            raise ValueError(f"{PREC_ENV_VAR} must be an integer number of bits, got {env!r}")
        if prec < 64:
            raise ValueError(f"{PREC_ENV_VAR} must be at least 64, got {prec}")
        return prec
    return int(get_setting('default_prec', 128))


def diagnose_config(config_file: Optional[str] = None) -> List[Tuple[str, str]]:
    """Config health check using a real ConfigManager instance."""
    results = []

    try:
        mgr = ConfigManager(config_file)
        if mgr.config_file:
            results.append(('✓', f"Config loaded: {mgr.config_file}"))
        else:
            results.append(('?', "No config file, using built-in defaults"))
    except Exception as e:
        results.append(('✗', f"Config failed: {e}"))
        return results

    try:
        prec = get_default_prec()
        source = PREC_ENV_VAR if os.environ.get(PREC_ENV_VAR) else 'settings'
        results.append(('✓', f"Default precision {prec} bits (from {source})"))
    except ValueError as e:
        results.append(('✗', str(e)))

    for path in mgr.identity_files():
        if path.exists():
            results.append(('✓', f"Identity file: {path}"))
        else:
            results.append(('✗', f"Identity file missing: {path}"))
    return results
