# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

import glob, os, sys, unittest

if __name__ == "__main__":
    parentdir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    sys.path.insert(0, parentdir)
    sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

    loader = unittest.defaultTestLoader
    files = glob.glob(os.path.join(os.path.dirname(__file__), "test_*.py"))
    files = [os.path.splitext(os.path.basename(f))[0] for f in files]
    tests  = loader.loadTestsFromNames(sorted(files))
    runner = unittest.TextTestRunner()
    result = runner.run(tests)

    # then every shipped scenario suite
    from legendrian.verify import run_all
    report = run_all()
    sys.stdout.write(report.summary() + "\n")
    sys.exit(not (result.wasSuccessful() and report.passed))
