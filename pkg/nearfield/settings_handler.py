# Copyright (c) 2026, nearfield-noise contributors

import logging
from os import makedirs, path
from threading import Lock
from typing import Any

import yaml

from nearfield.errors import ConfigError

logger = logging.getLogger(__name__)


class SettingsHandler():
    """Flat YAML mapping on disk, one lock around every file access."""

    def __init__(self, settings_file: str, create: bool = False) -> None:
        self._settings_file = path.expanduser(settings_file)
        self._file_lock = Lock()

        if path.isfile(self._settings_file):
            return

        if not create:
            raise ConfigError(f"Config file {self._settings_file} does not exist")

        directory = path.dirname(self._settings_file)
        if directory and not path.exists(directory):
            makedirs(directory)
        open(self._settings_file, "w").close()


    def _get_file_contents(self) -> dict:
        try:
            with self._file_lock, open(self._settings_file, "r") as file:
                data = yaml.safe_load(file) or {}
        except yaml.YAMLError as e:
            raise ConfigError(f"{self._settings_file}: invalid YAML: {e}") from e

        if not isinstance(data, dict):
            raise ConfigError(f"{self._settings_file}: expected a mapping at the top level")
        return data


    def _write_to_file(self, settings_data: Any) -> None:
        with self._file_lock, open(self._settings_file, "w") as file:
            yaml.safe_dump(settings_data, file)


    def write_setting(self, setting_value, setting_name: str) -> None:
        data = self._get_file_contents()
        data[setting_name] = setting_value
        self._write_to_file(data)


    def read_setting(self, setting_name: str) -> Any:
        return self._get_file_contents().get(setting_name, None)


    def read_all(self) -> dict:
        return self._get_file_contents()


    def get_path(self) -> str:
        return self._settings_file
