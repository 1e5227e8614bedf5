"""The two hook functions every instrumented subject calls.

Subject kernels wrap each hooked expression in ``p_int(ctl, ID, expr)``
or ``p_bool(ctl, ID, expr)`` with a literal point id.  A hook always
counts the invocation and always charges the step budget; it changes the
value only when the controller is in perturbing mode, the point and
occurrence match, and nothing has fired yet.  That makes the same
instrumented code serve reference runs, identity sweeps and perturbed
runs without recompilation.

Both hooks normalise their return through ``int()`` / ``bool()``.  Under
numba that is a no-op cast; under the pure-Python fallback it strips
numpy scalar types so that interpreter arithmetic keeps exact Python
semantics (notably ZeroDivisionError instead of numpy's warn-and-zero).
"""

from .._accel import kernel
from .controller import BUDGET, FIRED, HDR, MODE, MODEL, OCC, TARGET
from .errors import BudgetExceeded, HookConfigError

_M32 = (1 << 32) - 1
_B31 = 1 << 31


@kernel
def p_int(ctl, pp, value):
    if pp < 0 or pp >= ctl.shape[0] - HDR:
        raise HookConfigError("hook called with unregistered point id")
    c = ctl[HDR + pp]
    ctl[HDR + pp] = c + 1
    b = ctl[BUDGET] - 1
    ctl[BUDGET] = b
    if b < 0:
        raise BudgetExceeded("per-run step budget exhausted")
    if ctl[MODE] == 1 and ctl[FIRED] == 0 and pp == ctl[TARGET] and c == ctl[OCC]:
        ctl[FIRED] = 1
        m = ctl[MODEL]
        if m == 1:
            return int(((value + 1 + _B31) & _M32) - _B31)
        if m == 2:
            return int(((value - 1 + _B31) & _M32) - _B31)
        if m == 3:
            return 0
    return int(value)


@kernel
def p_bool(ctl, pp, value):
    if pp < 0 or pp >= ctl.shape[0] - HDR:
        raise HookConfigError("hook called with unregistered point id")
    c = ctl[HDR + pp]
    ctl[HDR + pp] = c + 1
    b = ctl[BUDGET] - 1
    ctl[BUDGET] = b
    if b < 0:
        raise BudgetExceeded("per-run step budget exhausted")
    if ctl[MODE] == 1 and ctl[FIRED] == 0 and pp == ctl[TARGET] and c == ctl[OCC]:
        ctl[FIRED] = 1
        if ctl[MODEL] == 4:
            return not value
    return bool(value)
