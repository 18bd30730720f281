"""Exact certification and construction of Leonard systems."""

from .certifier import Certificate, certify, infer_eigenvalues
from .constructor_verifier import (
    MatrixPair,
    askey_wilson_check,
    build_pair,
    check_witness_vectors,
    dualize,
    primitive_idempotents,
    verify_leonard_system,
)
from .exact_algebra import Field, Matrix, Mod
from .families import QRacahParams, krawtchouk, q_racah, racah_example
from .leonard_data import ConditionReport, LeonardData, RecurrenceConstants
from .splitseq import SplitSequences, split_sequences

__all__ = [
    "Certificate", "ConditionReport", "Field", "LeonardData", "Matrix", "MatrixPair", "Mod",
    "QRacahParams", "RecurrenceConstants", "SplitSequences", "askey_wilson_check", "build_pair",
    "certify", "check_witness_vectors", "dualize", "infer_eigenvalues", "krawtchouk",
    "primitive_idempotents", "q_racah", "racah_example", "split_sequences", "verify_leonard_system",
]
