# Copyright 2024 Canonical Ltd.
# See LICENSE file for licensing details.

"""Utilities for reading YAML config documents and looking up keys at any depth level."""
import logging
from abc import ABC, abstractmethod
from collections.abc import Mapping
from os.path import exists
from typing import Any, Dict, List, Optional

from gradedval.v0.gradedval_exceptions import ConfigError
from overrides import override
from ruamel.yaml import YAML
from ruamel.yaml.error import YAMLError

# The unique library identifier, never change it
LIBID = "9b1d3f5a7c2e4b6d8f0a1c3e5b7d9f2a"

# Increment this major API version when introducing breaking changes
LIBAPI = 0

# Increment this PATCH version before publishing the library or reset
# to 0 if you are raising the major API version
LIBPATCH = 1


logger = logging.getLogger(__name__)


class ConfigLoader(ABC):
    """Base class for reading config documents of any depth level.

    loader = YamlConfigLoader() or another config loader

    load("fixtures.yaml")
    get("fixtures.yaml", "valuations/A_plus/v1/p")
    get("fixtures.yaml", "models/five_point/scenarios/[0]/S")
    get("fixtures.yaml", "models/five_point/scenarios/[name:orbit_of_A]/U")
    """

    def __init__(self, base_path: str = None):
        """base_path: if set, where to look for files relatively on "load/get" methods."""
        self.base_path = self.__clean_base_path(base_path)

    @abstractmethod
    def load(self, config_file: str) -> Dict[str, Any]:
        """Load the content of a config document."""
        pass

    @abstractmethod
    def loads(self, content: str) -> Dict[str, Any]:
        """Load a config document from a string."""
        pass

    def get(self, config_file: str, key_path: str, sep: str = "/", default: Any = None) -> Any:
        """Value stored under key_path, default when any node of the path is missing.

        Args:
            config_file (str): Path to the source config file
            key_path (str): The path of the key to target
            sep (str): The separator / delimiter character to use in the key_path
            default (Any): Returned when the key does not exist

        Returns:
            Any: the value of the targeted node.
        """
        return lookup(self.load(config_file), key_path, sep, default)

    @staticmethod
    def __clean_base_path(base_path: Optional[str]) -> str:
        if base_path is None:
            return ""

        base_path = base_path.strip()
        if not base_path.endswith("/"):
            base_path = f"{base_path}/"

        return base_path


class YamlConfigLoader(ConfigLoader):
    """Class for reading YAML config documents from the file system."""

    def __init__(self, base_path: str = None):
        """base_path: if set, where to look for files relatively on "load/get" methods."""
        super().__init__(base_path)
        self.yaml = YAML(typ="safe")

    @override
    def load(self, config_file: str) -> Dict[str, Any]:
        """Load the content of a YAML file."""
        path = f"{self.base_path}{config_file}"

        if not exists(path):
            raise FileNotFoundError(f"{path} not found.")

        with open(path, "r") as f:
            return self.__parse(f.read(), path)

    @override
    def loads(self, content: str) -> Dict[str, Any]:
        """Load a YAML document from a string."""
        return self.__parse(content, "<string>")

    def __parse(self, content: str, source: str) -> Dict[str, Any]:
        try:
            data = self.yaml.load(content)
        except YAMLError as e:
            logger.error(f"Invalid YAML in {source}: {e}")
            raise ConfigError(f"{source}: {e}")

        if data is None:
            return {}
        if not isinstance(data, Mapping):
            raise ConfigError(f"{source}: the top level of a config document must be a mapping.")

        logger.debug(f"Loaded {source} with sections {list(data.keys())}")
        return dict(data)


def lookup(source: Any, key_path: str, sep: str = "/", default: Any = None) -> Any:
    """Walk a loaded document along key_path; list nodes accept [index] or [key:val]."""
    current = source
    for node_key in [k for k in key_path.split(sep) if k]:
        if current is None:
            return default

        if node_key.startswith("[") and node_key.endswith("]"):
            if not isinstance(current, list):
                return default
            index = _target_array_index(current, node_key)
            if index == -1:
                return default
            current = current[index]
        elif isinstance(current, Mapping):
            if node_key not in current:
                return default
            current = current[node_key]
        else:
            return default

    return current


def _target_array_index(source: List[Any], node_key: str) -> int:
    str_index = node_key[1:-1].strip()

    # where user provides a key [key:val]
    if str_index and not str_index.isnumeric():
        key = str_index.split(":", 1)
        if len(key) == 1:
            return source.index(str_index) if str_index in source else -1

        for i, elt in enumerate(source):
            if isinstance(elt, Mapping) and str(elt.get(key[0], None)) == key[1]:
                return i
        return -1

    index = int(str_index) if str_index else -1
    return index if 0 <= index < len(source) else -1
