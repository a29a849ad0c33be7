# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

"""
Check results and the JSON report of a verification run.

Results are sorted by check name and carry no timings, so that a report
depends only on the scenario files it was produced from.
"""

import json
import math

import numpy as np

__all__ = ["CheckResult", "Report", "jsonable"]


def jsonable(value):
    "Convert numpy scalars and arrays, and non-finite floats, for JSON."
    if isinstance(value, dict):
        return dict((str(k), jsonable(v)) for (k, v) in value.items())
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    return value


class CheckResult(object):
    """
    Outcome of one check: the measured defect against the tolerance, or the
    structured cause of the error that stopped it.
    """

    def __init__(self, name, anchor, passed, defect, tolerance, details=None,
                 error=None):
        self.name = name
        self.anchor = anchor
        self.passed = bool(passed)
        self.defect = defect
        self.tolerance = tolerance
        self.details = details or {}
        self.error = error

    def __repr__(self):
        return "CheckResult(%r, %s)" % (self.name,
                                        "pass" if self.passed else "FAIL")

    @staticmethod
    def failure(name, anchor, tolerance, error):
        "A check stopped by a L{legendrian.errors.LegendrianError}."
        return CheckResult(name, anchor, False, None, tolerance,
                           error=error.as_dict())

    def as_dict(self):
        data = {"name": self.name, "anchor": self.anchor,
                "passed": self.passed, "defect": self.defect,
                "tolerance": self.tolerance, "details": self.details}
        if self.error is not None:
            data["error"] = self.error
        return jsonable(data)


class Report(object):
    "Results of one or more suites."

    def __init__(self, suites=None):
        self.suites = {}
        for name, results in (suites or {}).items():
            self.add(name, results)

    def add(self, suite, results):
        self.suites[suite] = sorted(results, key=lambda r: r.name)

    @property
    def results(self):
        return [r for name in sorted(self.suites) for r in self.suites[name]]

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    def failures(self):
        return [r for r in self.results if not r.passed]

    def as_dict(self):
        return {"passed": self.passed,
                "suites": dict((name, [r.as_dict() for r in results])
                               for (name, results) in self.suites.items())}

    def dumps(self):
        return json.dumps(self.as_dict(), indent=1, sort_keys=True)

    def write(self, path):
        with open(path, "w") as f:
            f.write(self.dumps())
            f.write("\n")

    def summary(self):
        "One line per check, for the console."
        lines = []
        for name in sorted(self.suites):
            for r in self.suites[name]:
                if r.error is not None:
                    status = "ERROR %s" % r.error["cause"]
                elif r.passed:
                    status = "ok"
                else:
                    status = "FAIL"
                defect = "-" if r.defect is None else "%.3g" % r.defect
                lines.append("%-14s %-40s %-10s %s <= %g" %
                             (name, r.name, status, defect, r.tolerance))
        return "\n".join(lines)
