import json

from ._core import (
    ArgumentError,
    ConflictError,
    Dataset,
    Error,
    IngestError,
    NotFoundError,
    simulate,
)
from . import _core

__all__ = [
    "ArgumentError",
    "ConflictError",
    "Dataset",
    "Error",
    "IngestError",
    "NotFoundError",
    "Service",
    "mindsets",
    "simulate",
]


def mindsets():
    return json.loads(_core.mindset_catalog())["mindsets"]


class Service:
    """In-process /v1 API. Methods return (status, decoded JSON body)."""

    def __init__(self, dataset, deterministic=False, seed=1, aliases=None):
        self._svc = _core.Service(dataset, deterministic, seed, json.dumps(aliases) if aliases else "")

    def request(self, method, path, body=None):
        text = "" if body is None else json.dumps(body)
        status, out = self._svc.handle(method, path, text)
        return status, json.loads(out)

    def open_session(self, lat, lon, wall_time=None):
        body = {"lat": lat, "lon": lon}
        if wall_time is not None:
            body["wall_time"] = wall_time
        status, out = self.request("POST", "/v1/sessions", body)
        if status != 201:
            raise ArgumentError(out.get("error", "cannot open session"))
        return out["id"]

    def recommend(self, session, mindset, **overrides):
        body = {"mindset": mindset}
        if overrides:
            body["overrides"] = overrides
        return self.request("POST", f"/v1/sessions/{session}/recommend", body)

    def bookmark(self, session, poi):
        return self.request("POST", f"/v1/sessions/{session}/bookmarks", {"poi": poi})
