# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

from .helpers import (class_to_dict, get_args, update_cfg_from_args, set_seed, resolve_seed,
                      make_generator, load_kernel_cfg, check_inputs, write_json, write_csv, write_manifest, file_digest)
from .case_registry import case_registry
from .logger import Logger
