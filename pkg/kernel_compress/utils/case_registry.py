# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

import copy
import logging

from kc_core.errors import UsageError

from .helpers import resolve_seed

logger = logging.getLogger(__name__)


class CaseRegistry():
    def __init__(self):
        self.case_classes = {}
        self.case_cfgs = {}
        self.slow = set()

    def register(self, name: str, case_class, case_cfg, slow: bool = False):
        self.case_classes[name] = case_class
        self.case_cfgs[name] = case_cfg
        if slow:
            self.slow.add(name)

    @property
    def names(self):
        return list(self.case_classes)

    def get_case_class(self, name: str):
        return self.case_classes[name]

    def get_cfg(self, name):
        """ A private copy of the registered config, safe to override. """
        if name not in self.case_cfgs:
            raise UsageError(f"Case '{name}' is not registered; available: {', '.join(self.names)}")
        return copy.deepcopy(self.case_cfgs[name])

    def make_case(self, name, cfg=None, seed=None, out_dir=None, plot=False, overrides=None):
        """ Creates an acceptance case either from a registered name or from the provided config.

        Args:
            name (string): Name of a registered case.
            cfg (BaseConfig, optional): Case config used to override the registered config. Defaults to None.
            seed (int, optional): Overrides the config seed. KC_SEED overrides both. Defaults to None.
            out_dir (string, optional): Directory for the case outputs. None keeps the results in memory.
            plot (bool, optional): Also render PNG plots. Defaults to False.
            overrides (dict, optional): Nested field values applied on top of the config. Defaults to None.

        Raises:
            UsageError: Error if no registered case corresponds to 'name' or an override names an unknown field

        Returns:
            BaseCase: The created case
        """
        if name not in self.case_classes:
            raise UsageError(f"Case '{name}' is not registered; available: {', '.join(self.names)}")
        case_class = self.get_case_class(name)
        if cfg is None:
            cfg = self.get_cfg(name)
        if overrides:
            cfg.update(overrides)
        cfg.seed = resolve_seed(cfg.seed if seed is None else seed)
        logger.debug("making case %s with seed %d", name, cfg.seed)
        return case_class(name, cfg, out_dir=out_dir, plot=plot)


# make global case registry
case_registry = CaseRegistry()
