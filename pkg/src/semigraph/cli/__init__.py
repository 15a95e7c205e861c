from .runner import EXIT_LOAD, EXIT_OK, EXIT_PRECONDITION, EXIT_VERIFY, RunConfig, main, run
from .report import Report, TrialRecord, emit_report, fnv1a64, result_digest
