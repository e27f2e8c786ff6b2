"""Canonical session transcripts.

A transcript is the ordered record of everything that crossed the channel:
classical payloads, symbolically rendered quantum payloads, and the
memory-bound markers after which the retention cap is enforced.  Quantum
payloads are recorded as preparation data (x, theta) on the sender side
only; a receiver's view holds measurement records instead, never both.

The text encoding is canonical so that serialize/parse is an exact
round-trip and equal sessions produce byte-identical files:

    # protocol <id>
    # seed <int>
    # param <key> <value>        (sorted by key)
    <dir> <kind> <len> <hex>     (one event per line)

Kinds are quantum-symbolic, classical, and bound-marker.
"""

from __future__ import annotations

from dataclasses import dataclass, field

KIND_QUANTUM = "quantum-symbolic"
KIND_CLASSICAL = "classical"
KIND_BOUND = "bound-marker"
_KINDS = (KIND_QUANTUM, KIND_CLASSICAL, KIND_BOUND)


@dataclass(frozen=True)
class Event:
    direction: str  # short arrow token, e.g. "P>V"
    kind: str
    payload: bytes

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown event kind {self.kind!r}")
        if " " in self.direction or not self.direction:
            raise ValueError("direction token must be non-empty and spaceless")
        if self.kind == KIND_BOUND and self.payload:
            raise ValueError("bound markers carry no payload")


@dataclass
class Transcript:
    protocol: str
    seed: int
    params: dict[str, str] = field(default_factory=dict)
    events: list[Event] = field(default_factory=list)

    def add(self, direction: str, kind: str, payload: bytes = b"") -> None:
        self.events.append(Event(direction, kind, payload))

    def byte_length(self) -> int:
        return sum(len(e.payload) for e in self.events)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Transcript)
            and self.protocol == other.protocol
            and self.seed == other.seed
            and self.params == other.params
            and self.events == other.events
        )


class TranscriptParseError(Exception):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def serialize_transcript(t: Transcript) -> str:
    lines = [f"# protocol {t.protocol}", f"# seed {t.seed}"]
    for key in sorted(t.params):
        lines.append(f"# param {key} {t.params[key]}")
    for e in t.events:
        lines.append(f"{e.direction} {e.kind} {len(e.payload)} {e.payload.hex()}")
    return "\n".join(lines) + "\n"


def parse_transcript(text: str) -> Transcript:
    protocol = None
    seed = None
    params: dict[str, str] = {}
    events: list[Event] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            raise TranscriptParseError(line_no, "blank line not allowed")
        if line.startswith("# "):
            parts = line[2:].split(" ", 2)
            if parts[0] == "protocol" and len(parts) == 2:
                protocol = parts[1]
            elif parts[0] == "seed" and len(parts) == 2:
                try:
                    seed = int(parts[1])
                except ValueError:
                    raise TranscriptParseError(line_no, "seed must be an integer") from None
            elif parts[0] == "param" and len(parts) == 3:
                params[parts[1]] = parts[2]
            else:
                raise TranscriptParseError(line_no, f"malformed header {line!r}")
            continue
        parts = line.split(" ")
        if len(parts) != 4:
            raise TranscriptParseError(line_no, "event lines have four fields")
        direction, kind, length_s, payload_hex = parts
        if kind not in _KINDS:
            raise TranscriptParseError(line_no, f"unknown kind {kind!r}")
        try:
            length = int(length_s)
            payload = bytes.fromhex(payload_hex)
        except ValueError:
            raise TranscriptParseError(line_no, "bad length or hex payload") from None
        if len(payload) != length:
            raise TranscriptParseError(line_no, "payload length disagrees with declared length")
        events.append(Event(direction, kind, payload))
    if protocol is None or seed is None:
        raise TranscriptParseError(0, "missing protocol or seed header")
    return Transcript(protocol, seed, params, events)
