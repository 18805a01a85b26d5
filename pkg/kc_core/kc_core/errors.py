# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

""" Exception hierarchy. Every class carries the process exit code the CLI maps it to. """


class KernelCompressError(Exception):
    exit_code = 1


class UsageError(KernelCompressError, ValueError):
    exit_code = 2


class PreconditionError(UsageError):
    pass


class OutOfRegimeError(PreconditionError):
    pass


class InvalidConstantError(PreconditionError):
    pass


class RefusalError(UsageError):
    pass


class NumericalError(KernelCompressError, ArithmeticError):
    exit_code = 3


class EvaluationError(NumericalError):
    def __init__(self, i, j, value):
        self.i, self.j, self.value = i, j, value
        super().__init__(f"Non-finite kernel value {value} at entry ({i}, {j})")


class ConvergenceError(NumericalError):
    def __init__(self, message, last_value=None):
        self.last_value = last_value
        super().__init__(f"{message} (last value: {last_value})")


class RankDeficientError(NumericalError):
    pass


class ConstantNotRepresentableError(NumericalError):
    pass


class DegenerateKernelError(NumericalError):
    pass


class BoundaryReachedError(NumericalError):
    def __init__(self, t, message=""):
        self.t = t
        super().__init__(f"Truncation boundary reached at step t={t}. {message}".strip())


class InvariantViolationError(KernelCompressError):
    exit_code = 4

    def __init__(self, report):
        self.report = report
        first = report.get("first_violation") if isinstance(report, dict) else None
        super().__init__(f"Invariant violated: {first if first is not None else report}")
