# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Config class for specedge.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""


class Config(dict):
    """
    A class to access config values with dot notation.

    A populated Config is the experiment configuration: validated scalar
    keys plus the parsed ``profile``, ``distribution`` and ``partition``
    objects, the config hash and the command line arguments.
    """

    def __setitem__(self, key, value):
        """Make Config keys accessible as attributes."""
        super().__setattr__(key, value)
        super().__setitem__(key, value)

    def __getattr__(self, key):
        """Make Config keys accessible as attributes."""
        try:
            return self.__getitem__(key)
        except KeyError as err:
            raise AttributeError(err) from err

    __setattr__ = __setitem__

    def reset(self):
        """Remove all keys, including the attribute copies."""
        for key in list(self.keys()):
            super().__delattr__(key)
        super().clear()

    def populate(self, other):
        """
        Replace the current content with the content of another mapping.

        :param other: mapping with the new values
        :type other: dict
        """
        self.reset()
        for key, value in other.items():
            self[key] = value


config = Config()  # noqa
