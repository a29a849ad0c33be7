# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

"""
Verification: scenario files (L{scenario}), the check suites (L{suites}),
their JSON reports (L{report}) and figure reproduction (L{figures}).
"""

from legendrian.verify.scenario import Scenario, load_scenario, \
                                       parse_scenario, scenario_path
from legendrian.verify.report import CheckResult, Report
from legendrian.verify.suites import SUITES, run_check, run_suite, run_all
from legendrian.verify.figures import FIGURES, EXPERIMENTAL_FIGURES, \
                                      reproduce_figure

__all__ = ["Scenario", "load_scenario", "parse_scenario", "scenario_path",
           "CheckResult", "Report", "SUITES", "run_check", "run_suite",
           "run_all", "FIGURES", "EXPERIMENTAL_FIGURES", "reproduce_figure"]
