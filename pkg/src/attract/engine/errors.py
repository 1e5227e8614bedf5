"""Exceptions raised by the perturbation engine."""


class BudgetExceeded(Exception):
    """Raised inside a hook when the per-run step budget hits zero.

    This is the engine's termination guard: a perturbation that sends the
    subject into an endless loop still ends, and the run is reported as an
    exception outcome with the budget flag set.
    """


class HookConfigError(Exception):
    """A hook was called with a point id the controller does not know.

    This is an instrumentation bug, not a subject fault, so the guard
    re-raises it instead of recording an exception outcome.
    """


class SubjectFault(Exception):
    """Raised by corpus code for conditions the original program would
    surface as a crash (unsolvable state, iteration caps, corrupt data)."""


class ReferenceRunError(Exception):
    """A reference (unperturbed) execution misbehaved: it crashed, blew
    the budget, or its output was rejected by the oracle.  Reference runs
    define the exploration space, so the campaign aborts."""
