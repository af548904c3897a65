# SPDX-License-Identifier: MIT

"""Utility helpers used across intent_ran (paths, CSV output, number formatting)."""

import csv
import math
import numbers
import os
import subprocess
import time
from importlib import resources
from typing import Callable, Iterable, Sequence

from intent_ran.constants import OUTPUT_DIR_ENV


class Utility:
    """
    A utility class for common functions used by intent_ran.
    """

    @staticmethod
    def get_output_dir(default: str | None = None) -> str:
        """
        Get the output directory, generally set on $INTENT_RAN_OUT. Falls back
        to `default`, then to `./intent-ran-out`.
        """
        path = os.getenv(OUTPUT_DIR_ENV) or default or "intent-ran-out"
        path = os.path.normpath(os.path.abspath(path))
        os.makedirs(path, exist_ok=True)
        return path

    @staticmethod
    def get_git_describe() -> str:
        """
        Get the output of 'git describe --tags --always', or "unversioned"
        outside a git checkout.
        """
        try:
            return subprocess.check_output(
                ["git", "describe", "--tags", "--always"],
                text=True,
                stderr=subprocess.DEVNULL,
            ).strip()
        except (subprocess.CalledProcessError, FileNotFoundError):
            return "unversioned"

    @staticmethod
    def data_path(name: str) -> str:
        """Path of a reference document shipped in `intent_ran/data`"""
        return str(resources.files("intent_ran.data").joinpath(name))

    @staticmethod
    def read_text(path: str) -> str:
        """Read a UTF-8 text file"""
        with open(path, "r", encoding="utf-8") as f:
            return f.read()

    @staticmethod
    def write_text(path: str, text: str):
        """Write a UTF-8 text file with LF line endings"""
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)


def format_number(value: float | int | None) -> str:
    """
    Render a number for CSV output. Integral values print without a
    fractional part, others with the shortest round-trip repr; None and NaN
    print empty.
    """
    if value is None:
        return ""
    if isinstance(value, numbers.Integral):
        return str(int(value))
    if math.isnan(value):
        return ""
    value = float(value)
    if value.is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence]):
    """Write rows under a fixed header; numbers go through `format_number`"""
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(
                [
                    cell if isinstance(cell, str) else format_number(cell)
                    for cell in row
                ]
            )


def read_csv(path: str) -> list[dict[str, str]]:
    """Read a CSV written by `write_csv` back as a list of dicts"""
    with open(path, "r", encoding="utf-8", newline="") as f:
        return list(csv.DictReader(f))


def timed(func: Callable[[], object]) -> float:
    """Run `func` once and return its wall time in milliseconds (monotonic clock)"""
    start = time.perf_counter()
    func()
    return (time.perf_counter() - start) * 1000.0
