"""Error types raised by vsslab

Every error derives from VssLabError. Errors that describe a bad argument or
configuration also derive from ValueError so plain callers can catch either.

Protocol code does not raise on adversarial input. Missing or malformed
messages are replaced by default values inside the protocols; the errors below
signal misuse of the library or a bug that a test should catch.

Usage:
    from vsslab.errors import DecodeFail, VssLabError

    try:
        q = rs_decode(1, 1, shares, params)
    except DecodeFail:
        q = None
"""


class VssLabError(Exception):
    """Base class for every error raised by vsslab"""


# algebra


class DuplicateAbscissa(VssLabError, ValueError):
    """Two interpolation points share the same x value"""


class DegreeMismatch(VssLabError, ValueError):
    """Polynomial degrees are incompatible with the requested embedding"""


class InsufficientPolynomials(VssLabError, ValueError):
    """Too few row or column polynomials to determine a bivariate polynomial"""


# codes


class DecodeFail(VssLabError):
    """Reed-Solomon decoding impossible with the given data"""


class DuplicateFeed(VssLabError, ValueError):
    """A party's share was fed twice"""


class ForeignParty(VssLabError, ValueError):
    """A share was fed from a party outside the decoding source set"""


# netsim / adversary


class RoundOverrun(VssLabError):
    """A synchronous run needs more rounds than allowed"""


class Livelock(VssLabError):
    """Honest parties did not terminate within the step budget"""


class OriginViolation(VssLabError):
    """An adversary strategy tried to send on behalf of an honest party"""


class FairnessViolation(VssLabError):
    """A delivery deadline was missed by the asynchronous engine"""


# configuration


class ConfigInvalid(VssLabError, ValueError):
    """Scenario configuration is malformed"""


class ConfigBound(ConfigInvalid):
    """(n, t, d, L) lie outside a scheme's feasibility bound"""


class FieldTooSmall(ConfigInvalid):
    """The field cannot host the required evaluation points"""


# harness


class EnumerationTooLarge(VssLabError):
    """The privacy oracle refuses an enumeration above its state limit"""


class TapeExhausted(VssLabError):
    """A fixed randomness tape ran out of values"""


class NonLinearView(VssLabError):
    """Adversary views are not an affine function of the randomness tape"""
