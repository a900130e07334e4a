"""Command-line shim: ``python3 -m metarepair.javatool javac|java ARGS``.

Lets manifests name a portable build/test command whether a JDK is on PATH
or the bundled runtime plus Janino is in use.
"""

from __future__ import annotations

import sys

from .verify.toolchain import main

if __name__ == "__main__":
    sys.exit(main())
