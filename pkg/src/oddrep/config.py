"""Run configuration and data-file integrity checks.

A configuration is a JSON object whose keys are RunConfig field names;
its path is taken from the ODDREP_CONFIG environment variable.  Command
line flags override file values.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import asdict, dataclass, fields
from importlib import resources
from pathlib import Path

from .action import DEFAULT_DOMAIN_CAP

ENV_VAR = "ODDREP_CONFIG"
CHECKED_FILES = ("corpus.json", "step7_ledger.json", "conway.json")


class ConfigError(ValueError):
    """Invalid configuration value or unresolvable path."""


class ManifestError(RuntimeError):
    """A data file does not match its recorded checksum."""


@dataclass
class RunConfig:
    threads: int = 1
    element_cap: int = 10 ** 6
    domain_cap: int = DEFAULT_DOMAIN_CAP
    catalog_dir: str = "catalogs"
    corpus_path: str | None = None       # None: the packaged corpus
    ledger_path: str | None = None       # None: the packaged case ledger
    manifest_path: str | None = None     # None: the packaged manifest
    precision_bits: int = 128

    def validate(self) -> "RunConfig":
        for name in ("threads", "element_cap", "domain_cap", "precision_bits"):
            if int(getattr(self, name)) <= 0:
                raise ConfigError(f"{name} must be positive")
        for name in ("corpus_path", "ledger_path", "manifest_path"):
            p = getattr(self, name)
            if p is not None and not Path(p).is_file():
                raise ConfigError(f"{name} {p!r} does not exist")
        return self

    def to_json(self) -> dict:
        return asdict(self)


def load_config(path: str | None = None, overrides: dict | None = None) -> RunConfig:
    """Defaults, then the JSON file (argument or $ODDREP_CONFIG), then overrides."""
    values: dict = {}
    path = path or os.environ.get(ENV_VAR)
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                values.update(json.load(fh))
        except OSError as exc:
            raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    known = {f.name for f in fields(RunConfig)}
    unknown = set(values) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    for k, v in (overrides or {}).items():
        if v is not None:
            values[k] = v
    return RunConfig(**values).validate()


def sha256_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _packaged(name: str) -> bytes:
    return resources.files("oddrep").joinpath(f"data/{name}").read_bytes()


def data_bytes(name: str, cfg: RunConfig | None = None) -> bytes:
    """Contents of a checked data file, honouring path overrides in cfg."""
    override = None
    if cfg is not None:
        override = {"corpus.json": cfg.corpus_path, "step7_ledger.json": cfg.ledger_path}.get(name)
    if override:
        return Path(override).read_bytes()
    return _packaged(name)


def manifest(cfg: RunConfig | None = None) -> dict:
    if cfg is not None and cfg.manifest_path:
        return json.loads(Path(cfg.manifest_path).read_text(encoding="utf-8"))
    return json.loads(_packaged("manifest.json"))


def check_manifest(cfg: RunConfig | None = None) -> dict[str, str]:
    """Raise ManifestError unless every checked data file matches the manifest."""
    recorded = manifest(cfg)["sha256"]
    out = {}
    for name in CHECKED_FILES:
        digest = sha256_bytes(data_bytes(name, cfg))
        if recorded.get(name) != digest:
            raise ManifestError(f"{name}: checksum {digest[:12]}... does not match the manifest")
        out[name] = digest
    return out


def build_manifest(directory: str | Path) -> dict:
    """Manifest content for the data files in ``directory``."""
    directory = Path(directory)
    return {
        "description": "sha256 checksums of versioned data files",
        "sha256": {name: sha256_bytes((directory / name).read_bytes()) for name in CHECKED_FILES},
    }
