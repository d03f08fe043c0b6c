"""Deterministic simulated network: messages, party interfaces and engines

Engines live in vsslab.netsim.sync, vsslab.netsim.asynchronous and
vsslab.netsim.hybrid.
"""

from vsslab.netsim.messages import Envelope, Kind, Message, Phase
from vsslab.netsim.transcript import Metrics, Transcript

__all__ = ["Envelope", "Kind", "Message", "Phase", "Metrics", "Transcript"]
