"""Reed-Solomon decoding and online error correction"""

from vsslab.codes.oec import OecState, oec_feed
from vsslab.codes.reed_solomon import ShareSet, brute_force_decode, rs_decode

__all__ = ["OecState", "oec_feed", "ShareSet", "brute_force_decode", "rs_decode"]
