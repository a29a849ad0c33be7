# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

"""
Exceptions raised by the toolkit.

Every exception carries a short C{cause} string, stable enough to be matched
by report consumers, and a C{details} dictionary of the offending values.
"""

__all__ = ["LegendrianError", "ArityError", "RangeError",
           "PatternNotApplicable", "NoStabilizationFound", "NotTrackedError",
           "HomologyNotSimpleError", "BoxInsufficientError", "NotSimpleError",
           "ConjugateNotFiniteError", "UnsupportedExportError",
           "ScenarioError"]


class LegendrianError(Exception):
    "Base class for all toolkit errors."

    cause = "error"

    def __init__(self, message=None, **details):
        if message is None:
            message = self.cause
        Exception.__init__(self, message)
        self.message = message
        self.details = details

    def as_dict(self):
        "Structured form used in JSON reports."
        details = {}
        for key, value in sorted(self.details.items()):
            if isinstance(value, (int, float, str, bool, type(None))):
                details[key] = value
            elif isinstance(value, (list, tuple)):
                details[key] = [v if isinstance(v, (int, float, str, bool))
                                else repr(v) for v in value]
            else:
                details[key] = repr(value)
        return {"cause": self.cause, "message": self.message,
                "details": details}


class ArityError(LegendrianError):
    cause = "arity"


class RangeError(LegendrianError):
    cause = "range"


class PatternNotApplicable(LegendrianError):
    cause = "pattern not applicable"


class NoStabilizationFound(LegendrianError):
    cause = "no stabilization found"


class NotTrackedError(LegendrianError):
    cause = "index not tracked"


class HomologyNotSimpleError(LegendrianError):
    cause = "homology not simple: enlarge box or grid"


class BoxInsufficientError(LegendrianError):
    cause = "box insufficient"


class NotSimpleError(LegendrianError):
    cause = "not simple"


class ConjugateNotFiniteError(LegendrianError):
    cause = "conjugate not finite"


class UnsupportedExportError(LegendrianError):
    cause = "unsupported export"


class ScenarioError(LegendrianError):
    cause = "scenario"
