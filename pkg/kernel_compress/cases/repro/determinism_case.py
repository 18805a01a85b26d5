# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

import os
import tempfile

from kernel_compress.cases.base.base_case import BaseCase
from kernel_compress.utils.case_registry import case_registry
from kernel_compress.utils.helpers import file_digest


def digest_tree(root):
    """ sha256 of every file under root, keyed by its relative path. """
    digests = {}
    for directory, _, files in os.walk(root):
        for name in files:
            path = os.path.join(directory, name)
            digests[os.path.relpath(path, root).replace(os.sep, "/")] = file_digest(path)
    return dict(sorted(digests.items()))


class DeterminismCase(BaseCase):
    """ Runs the configured cases repeatedly with one seed and compares every output file byte for byte. """

    def compute(self):
        c = self.cfg.case
        runs = []
        for _ in range(c.repeats):
            with tempfile.TemporaryDirectory(prefix="kc_determinism_") as root:
                for name in c.cases:
                    case = case_registry.make_case(name, seed=self.seed, out_dir=os.path.join(root, name))
                    case.run()
                runs.append(digest_tree(root))

        reference = runs[0]
        mismatched = sorted({path for digests in runs[1:] for path in set(reference) ^ set(digests)}
                            | {path for digests in runs[1:] for path in reference
                               if path in digests and digests[path] != reference[path]})
        self.tables["determinism"] = (["file", "sha256"], list(reference.items()))
        self.metrics = {
            "cases": list(c.cases),
            "repeats": c.repeats,
            "files": len(reference),
            "mismatched": mismatched,
        }
        return bool(reference) and not mismatched
