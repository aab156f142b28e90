"""Decision procedures: brute-force oracle, backtracking solver, step certifier."""

from .certify import AttachmentConstraint, FreeAttachmentSpec, Scaffold, StepReport, Verdict, certify_step, free
from .claims import CLAIM_IDS, certify_claim, certify_gadget, gadget_scaffold
from .oracle import count_all, enumerate_all, first_layout
from .solver import SolveResult, Status, hunt, solve

__all__ = [
    "AttachmentConstraint",
    "CLAIM_IDS",
    "FreeAttachmentSpec",
    "Scaffold",
    "SolveResult",
    "Status",
    "StepReport",
    "Verdict",
    "certify_claim",
    "certify_gadget",
    "certify_step",
    "count_all",
    "enumerate_all",
    "first_layout",
    "free",
    "gadget_scaffold",
    "hunt",
    "solve",
]
