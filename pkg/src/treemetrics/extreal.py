"""Extended-real helpers.

Node weights may be the minus-infinity marker ("this node never counts as a
target") and propagated slack values may be plus infinity ("no constraint
from this side").  Sums of the two shapes meet in a few candidate formulas,
and the minus-infinity side must win there: a target that does not exist
beats a constraint that does not bind.  Plain float addition would produce
NaN for ``-inf + inf``, hence the tiny guard below.
"""

NEG_INF = float("-inf")
POS_INF = float("inf")


def combine(weight_side: float, slack_side: float) -> float:
    """Add a node-weight-flavoured value to a slack-flavoured value.

    ``weight_side`` may be ``-inf`` (and dominates); ``slack_side`` may be
    ``+inf``.  Both finite is the common case.
    """
    if weight_side == NEG_INF:
        return NEG_INF
    return weight_side + slack_side


def parse_weight(token: str) -> float:
    """Parse a node weight, accepting the ``-inf`` literal."""
    if token == "-inf":
        return NEG_INF
    return float(token)


def format_weight(value: float) -> str:
    if value == NEG_INF:
        return "-inf"
    if value == int(value):
        return str(int(value))
    return repr(value)
