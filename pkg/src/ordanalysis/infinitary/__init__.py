"""Infinitary derivations with the omega rule."""
from .deriv import *  # noqa: F401,F403
from .check import CheckReport, check_coherence, tc_upper_bound  # noqa: F401
from .build import (  # noqa: F401
    derive_valid, taut, derive_induction, derive_ti, embed_axiom, axiom_bound,
    NotDerivable,
)
from .embed import embed, EmbedError, AxiomTable, cut_rank_label, embedding_bound  # noqa: F401
from .elim import invert, reduce_cut, eliminate, eliminate_all  # noqa: F401
from .sound import evaluate_sound, SoundResult, VERIFIED, UNKNOWN, DESCENT  # noqa: F401
