import functools
import os

from liesph.chevalley import build_chevalley
from liesph.roots import build_root_system

GOLDEN_DIR = os.path.join(os.path.dirname(__file__), "goldens")


@functools.lru_cache(maxsize=None)
def get_rs(name: str, swap: bool = False):
    return build_root_system(name, swap=swap)


@functools.lru_cache(maxsize=None)
def get_algebra(name: str, sign: int = 1):
    return build_chevalley(get_rs(name), sign)
