"""On-disk cache of computed resolutions.

Entries are resolution JSON documents named by presentation
fingerprint, so any two spec strings that build the same presentation
share one entry.  Writes go through a temporary file and an atomic
rename; reads re-validate the stored resolution from scratch before
trusting it, treating anything stale, corrupt, or plain wrong as a
miss.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Optional

from .errors import ComputationalLimit
from .pcgroup import FiniteGroup
from .resolution import (
    FreeResolution,
    extend_resolution,
    validate_resolution,
)


class ResolutionCache:
    def __init__(self, directory):
        self.directory = Path(directory)

    def path_for(self, G: FiniteGroup) -> Path:
        return self.directory / f"res-{G.presentation.fingerprint()}.json"

    def load(self, G: FiniteGroup) -> Optional[FreeResolution]:
        """The cached resolution for G, fully re-validated; None on miss."""
        path = self.path_for(G)
        try:
            with open(path, encoding="utf-8") as f:
                data = json.load(f)
            res = FreeResolution.from_json(data, G)
        except (OSError, ValueError, KeyError, TypeError):
            return None
        if not validate_resolution(res).ok:
            # a failed validation means the file is lying; drop it
            try:
                os.remove(path)
            except OSError:
                pass
            return None
        return res

    def store(self, res: FreeResolution) -> Path:
        path = self.path_for(res.group)
        self.directory.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(
            dir=self.directory, prefix=path.stem, suffix=".tmp"
        )
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                json.dump(res.to_json(), f)
            os.replace(tmp, path)
        except BaseException:
            try:
                os.remove(tmp)
            except OSError:
                pass
            raise
        return path


def resolve(
    G: FiniteGroup,
    N: int,
    *,
    cache: Optional[ResolutionCache] = None,
    **limits,
) -> FreeResolution:
    """Resolution of G to degree N, through the cache when one is given.

    A cached stretch is continued rather than recomputed, and the cache
    is rewritten whenever the computation got further than the entry,
    including the partial progress rescued from a budget overrun.
    Keyword limits are passed to extend_resolution.
    """

    def grew(res):
        return start is None or res.max_degree > start.max_degree

    start = cache.load(G) if cache is not None else None
    try:
        res = extend_resolution(G, N, start=start, **limits)
    except ComputationalLimit as limit:
        if (
            cache is not None
            and isinstance(limit.partial, FreeResolution)
            and grew(limit.partial)
        ):
            cache.store(limit.partial)
        raise
    if cache is not None and grew(res):
        cache.store(res)
    return res
