"""Locating a Java compiler and runtime.

A JDK on ``PATH`` is preferred. Without one, the runtime bundled by the
``jdk4py`` package is paired with the Janino compiler, whose jars are found
through ``METAREPAIR_JANINO_CLASSPATH`` or a few conventional directories.

Running ``python3 -m metarepair.javatool javac|java ARGS...`` gives
project scripts a compiler and launcher that work with either setup.
"""

from __future__ import annotations

import glob
import os
import shutil
import subprocess
import sys
from dataclasses import dataclass
from functools import lru_cache

from ..errors import ToolchainUnavailable

JANINO_ENV = "METAREPAIR_JANINO_CLASSPATH"
JANINO_DIRS = ("/opt/janino", "/usr/share/java", "~/.local/share/janino")
JANINO_MAIN = "org.codehaus.commons.compiler.samples.CompilerDemo"


@dataclass(frozen=True)
class Toolchain:
    kind: str  # "jdk" or "janino"
    java: str
    javac: tuple[str, ...]

    def compile_cmd(self, sources: list[str], outdir: str, classpath: str | None = None) -> list[str]:
        cmd = list(self.javac)
        if self.kind == "jdk":
            cmd += ["-nowarn", "-encoding", "UTF-8", "-d", outdir]
            if classpath:
                cmd += ["-cp", classpath]
        else:
            cmd += ["-encoding", "UTF-8", "-d", outdir]
            if classpath:
                cmd += ["-classpath", classpath]
        return cmd + list(sources)

    def run_cmd(self, classpath: str, main: str, args: list[str] = ()) -> list[str]:
        return [self.java, "-Xshare:auto", "-XX:TieredStopAtLevel=1", "-cp", classpath, main, *args]


def _janino_classpath() -> str | None:
    env = os.environ.get(JANINO_ENV)
    if env:
        return env
    for d in JANINO_DIRS:
        d = os.path.expanduser(d)
        jan = sorted(glob.glob(os.path.join(d, "janino-*.jar")))
        com = sorted(glob.glob(os.path.join(d, "commons-compiler-*.jar")))
        if jan and com:
            return os.pathsep.join([jan[-1], com[-1]])
    return None


def _bundled_java() -> str | None:
    try:
        import jdk4py  # optional runtime extra
    except ImportError:
        return None
    path = str(jdk4py.JAVA)
    return path if os.path.exists(path) else None


@lru_cache(maxsize=1)
def find_toolchain() -> Toolchain:
    javac, java = shutil.which("javac"), shutil.which("java")
    if javac and java:
        return Toolchain("jdk", java, (javac,))
    java = java or _bundled_java()
    cp = _janino_classpath()
    if java and cp:
        return Toolchain("janino", java, (java, "-cp", cp, JANINO_MAIN))
    raise ToolchainUnavailable(
        "no Java toolchain: install a JDK, or jdk4py plus Janino jars (set " + JANINO_ENV + ")"
    )


def available() -> bool:
    try:
        find_toolchain()
    except ToolchainUnavailable:
        return False
    return True


def _normalise_javac_args(args: list[str], kind: str) -> list[str]:
    out = []
    it = iter(args)
    for a in it:
        if kind == "janino" and a in ("-cp", "--class-path"):
            out.append("-classpath")
        elif kind == "janino" and a in ("-nowarn", "-Xlint:none") :
            continue
        elif kind == "janino" and a in ("-source", "-target", "--release"):
            next(it, None)
            continue
        else:
            out.append(a)
    return out


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] not in ("javac", "java"):
        print("usage: python3 -m metarepair.verify.toolchain javac|java ARGS...", file=sys.stderr)
        return 2
    try:
        tc = find_toolchain()
    except ToolchainUnavailable as exc:
        print(str(exc), file=sys.stderr)
        return 127
    tool, rest = argv[0], argv[1:]
    if tool == "javac":
        cmd = list(tc.javac) + _normalise_javac_args(rest, tc.kind)
    else:
        cmd = [tc.java, *rest]
    return subprocess.call(cmd)


if __name__ == "__main__":
    sys.exit(main())
