from __future__ import annotations

import importlib.metadata

VERSION = importlib.metadata.version("fmsync-cli")
MACHINE_VERSION = f"fmsync-fssp/{VERSION}"
