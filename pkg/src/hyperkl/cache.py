"""On-disk cache of discrete-log tables.

One ``.npz`` file per field, named after (p, k, modulus, generator).  The file
stores the exp table and a sha256 of its bytes; a mismatch means corruption
and the table is rebuilt.  Writes go through a temporary file and
``os.replace`` so readers never see a partial file.
"""
from __future__ import annotations

import hashlib
import logging
import os
import tempfile
from pathlib import Path

import numpy as np

from .field import FieldCtx

ENV_VAR = "HYPERKL_CACHE_DIR"
log = logging.getLogger(__name__)


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "hyperkl"


def cache_key(ctx: FieldCtx) -> str:
    mod = "-".join(str(c) for c in ctx.modulus)
    return f"dlog_p{ctx.p}_k{ctx.k}_m{mod}_g{ctx.generator}"


def _digest(exp: np.ndarray) -> str:
    return hashlib.sha256(np.ascontiguousarray(exp, dtype=np.int64).tobytes()).hexdigest()


def _write(path: Path, exp: np.ndarray) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            np.savez(fh, exp=exp, sha256=np.array(_digest(exp)))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cache_dlog(ctx: FieldCtx, cache_dir: str | os.PathLike | None = None) -> tuple[Path, str]:
    """Load the tables of ``ctx`` from cache, or build and store them.

    Returns (path, status) with status one of "hit", "miss", "rebuilt".
    """
    root = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    path = root / f"{cache_key(ctx)}.npz"
    status = "miss"
    if path.exists():
        try:
            with np.load(path) as data:
                exp = data["exp"]
                stored = str(data["sha256"])
            if stored != _digest(exp):
                raise ValueError("checksum mismatch")
            ctx.install_tables(exp)
            return path, "hit"
        except Exception as exc:  # corrupt or foreign file: rebuild
            log.warning("discarding cache file %s: %s", path, exc)
            status = "rebuilt"
    try:
        _write(path, ctx.exp_table)
    except OSError as exc:
        raise OSError(f"cannot write dlog cache {path}: {exc}") from exc
    return path, status
