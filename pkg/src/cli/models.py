from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

import src.core.constants as constants
from src.core.exceptions import ParseError
from src.utils.io_utils import load_json, save_json

Command = Literal["simulate", "test", "detect", "reduce", "bench", "plotdata"]

MANIFEST_SUFFIX = ".manifest.json"


class RunManifest(BaseModel):
    """
    Everything needed to reproduce one command: the argv it was called
    with, the files it read and wrote, the resolved parameters and seed.
    """

    model_config = ConfigDict(frozen=True)

    command: Command
    argv: List[str]
    inputs: List[str] = Field(default_factory=list)
    outputs: List[str] = Field(default_factory=list)
    parameters: Dict[str, Any] = Field(default_factory=dict)
    seed: Optional[int] = None
    tool_version: str = constants.TOOL_VERSION

    @staticmethod
    def sidecar_path(output: str) -> str:
        return f"{output}{MANIFEST_SUFFIX}"

    def to_json_dict(self) -> dict:
        return self.model_dump(mode="json")

    def write_sidecar(self, output: str) -> str:
        path = self.sidecar_path(output)
        save_json(self.to_json_dict(), path)
        return path

    @classmethod
    def load(cls, path: str) -> "RunManifest":
        """Reads a sidecar manifest or a JSON output that embeds one under "manifest"."""
        document = load_json(path)
        try:
            return cls.model_validate(document.get("manifest", document))
        except ValidationError as e:
            raise ParseError(f"{path} is not a run manifest: {e.error_count()} invalid fields")
