# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

import sys

from legendrian.cli import main

if __name__ == "__main__":
    sys.exit(main())
