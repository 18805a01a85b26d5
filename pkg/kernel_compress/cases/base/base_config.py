# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

import inspect

from kc_core.errors import UsageError

from kernel_compress.utils.helpers import class_to_dict


def is_section(value) -> bool:
    """ Nested config objects, as opposed to plain field values. """
    return hasattr(value, "__dict__") and not inspect.isroutine(value) and not isinstance(value, type)


class BaseConfig:
    """ Config made of fields and nested section classes.

    Sections are instantiated per config object, so overriding a field never touches the class defaults
    shared by every config of the same type. Keyword overrides are applied with `update`.
    """

    def __init__(self, **overrides) -> None:
        self.init_member_classes(self)
        if overrides:
            self.update(overrides)

    @staticmethod
    def init_member_classes(obj):
        for key in dir(obj):
            if key.startswith("_"):
                continue
            var = getattr(obj, key)
            if inspect.isclass(var):
                section = var()
                setattr(obj, key, section)
                BaseConfig.init_member_classes(section)

    def update(self, overrides: dict) -> "BaseConfig":
        """ Applies a nested dict of overrides. Unknown fields and values that would replace a section are usage errors. """
        _update_section(self, overrides, "")
        return self

    def to_dict(self) -> dict:
        return class_to_dict(self)


def _update_section(obj, values: dict, prefix: str):
    for key, value in values.items():
        name = f"{prefix}{key}"
        if key.startswith("_") or not hasattr(obj, key) or inspect.isroutine(getattr(obj, key)):
            raise UsageError(f"Unknown config field '{name}'")
        current = getattr(obj, key)
        if is_section(current):
            if not isinstance(value, dict):
                raise UsageError(f"Config section '{name}' needs a mapping, got {type(value).__name__}")
            _update_section(current, value, name + ".")
        else:
            setattr(obj, key, value)
