# -*- coding: utf-8 -*-
"""
User configuration file management, based on :mod:`configparser`.

Option values are stored as text. When an option is read, its text is converted to
the type of the option's default value, so that ``CONF.get("Evaluation",
"workers")`` returns an ``int`` and ``CONF.get("Evaluation", "clamp")`` a ``bool``.

(c) setpsnr developers; This work is licensed under a Creative Commons
Attribution-NonCommercial-NoDerivs 2.0 UK: England & Wales License.

"""
import ast
import os
import os.path as osp
import re
import logging
import configparser as cp
from typing import List, Tuple, Dict, Any, Optional

from setpsnr.config.base import get_conf_path, get_home_dir

logger = logging.getLogger(__name__)


class NoDefault:
    pass


def _major(version: str) -> str:
    return version.split(".")[0]


class UserConfig(cp.ConfigParser):
    """
    Persistent user configuration.

    :param name: Name of the config, the ini file is named ``name + ".ini"``.
    :param defaults: List of tuples ``(section_name, {option: default_value})``.
    :param load: If ``True``, values stored in the ini file override the defaults.
    :param version: Version of the configuration in X.Y.Z format. A stored
        configuration with a different major version is reset to defaults.
    :param subfolder: The ini file is saved in ``~/subfolder/name.ini``.
    :param save: Write the (merged) configuration back to disk after loading.
    """

    DEFAULT_SECTION_NAME = "main"

    def __init__(
        self,
        name: str,
        defaults: List[Tuple[str, Dict[str, Any]]],
        load: bool = True,
        version: str = "0.0.0",
        subfolder: Optional[str] = None,
        save: bool = True,
    ) -> None:
        cp.ConfigParser.__init__(self, interpolation=None)
        self.optionxform = str

        if re.match(r"^(\d+).(\d+).(\d+)$", version) is None:
            raise ValueError(
                "Version number %r is incorrect - must be in X.Y.Z format" % version
            )

        self.name = name
        self.subfolder = subfolder
        self.defaults = defaults

        self.reset_to_defaults(save=False)

        if load:
            old_version = self.load_from_ini()
            if old_version is not None and _major(old_version) != _major(version):
                logger.info(
                    "Config version changed from %s to %s, resetting options.",
                    old_version,
                    version,
                )
                self.clear()
                self.reset_to_defaults(save=False)

        self._set(self.DEFAULT_SECTION_NAME, "version", version)

        if load and save:
            self._save()

    # ==================================================================================
    # file handling
    # ==================================================================================

    def filename(self) -> str:
        """Path of the ini file associated with this config."""
        if self.subfolder is None:
            return osp.join(get_home_dir(), ".%s.ini" % self.name)
        return get_conf_path(self.subfolder, "%s.ini" % self.name)

    def load_from_ini(self) -> Optional[str]:
        """
        Loads stored values from the ini file, if it exists.

        :returns: Version of the stored configuration or ``None``.
        """
        fname = self.filename()

        if not osp.isfile(fname):
            return None

        stored = cp.ConfigParser(interpolation=None)
        stored.optionxform = str

        try:
            stored.read(fname, encoding="utf-8")
        except cp.Error as exc:
            logger.warning("Could not read config file '%s': %s", fname, exc)
            return None

        for section in stored.sections():
            for option, value in stored.items(section, raw=True):
                if self.get_default(section, option) is not NoDefault:
                    self._set(section, option, value)

        return stored.get(self.DEFAULT_SECTION_NAME, "version", fallback="0.0.0")

    def _save(self) -> None:
        """Saves the config into the associated ini file."""
        with open(self.filename(), "w", encoding="utf-8") as configfile:
            self.write(configfile)

    def cleanup(self) -> None:
        """Removes the ini file associated with the config."""
        os.remove(self.filename())

    # ==================================================================================
    # options
    # ==================================================================================

    def _set(self, section: str, option: str, value) -> None:
        if not self.has_section(section):
            self.add_section(section)
        if not isinstance(value, str):
            value = repr(value)
        cp.ConfigParser.set(self, section, option, value)

    def reset_to_defaults(self, save: bool = True, section: Optional[str] = None):
        """Resets all options, or the options of one section, to their defaults."""
        for sec, options in self.defaults:
            if section is None or section == sec:
                for option, value in options.items():
                    self._set(sec, option, value)
        if save:
            self._save()

    def get_default(self, section: str, option: str):
        """Default value for a given (section, option), or :class:`NoDefault`."""
        for sec, options in self.defaults:
            if sec == section and option in options:
                return options[option]
        return NoDefault

    def get(self, section: str, option: str, default=NoDefault, **kwargs):
        """
        Gets an option, converted to the type of its default value.

        :param section: Section name.
        :param option: Option name.
        :param default: Returned if the option does not exist. If not given,
            :class:`configparser.NoOptionError` is raised instead.
        """
        if not self.has_option(section, option):
            if default is NoDefault:
                if not self.has_section(section):
                    raise cp.NoSectionError(section)
                raise cp.NoOptionError(option, section)
            return default

        value = cp.ConfigParser.get(self, section, option, raw=True)
        return _convert(value, self.get_default(section, option))

    def set(self, section: str, option: str, value, save: bool = True) -> None:
        """
        Sets an option.

        :raises: :class:`ValueError` if ``value`` cannot be converted to the type of
            the option's default.
        """
        default_value = self.get_default(section, option)

        if isinstance(default_value, bool):
            if not isinstance(value, bool):
                raise ValueError(
                    "Option '{0}/{1}' must be True or False.".format(section, option)
                )
        elif isinstance(default_value, (int, float)):
            value = type(default_value)(value)

        self._set(section, option, value)

        if save:
            self._save()


def _convert(value: str, default_value):
    if isinstance(default_value, bool):
        return ast.literal_eval(value)
    elif isinstance(default_value, int):
        return int(value)
    elif isinstance(default_value, float):
        return float(value)
    elif isinstance(default_value, str):
        # strings are stored as their repr
        try:
            literal = ast.literal_eval(value)
        except (SyntaxError, ValueError):
            return value
        return literal if isinstance(literal, str) else value
    else:
        try:
            return ast.literal_eval(value)
        except (SyntaxError, ValueError):
            return value
