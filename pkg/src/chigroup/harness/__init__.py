"""Group catalog, verification suites, reports and the command line interface."""

from .catalog import CatalogEntry, Expected, catalog, lookup
from .reporting import SCHEMA_VERSION, report_dict, report_emit
from .suites import SUITES, ClaimRecord, VerificationReport, Workspace, run_suite

__all__ = ["CatalogEntry", "ClaimRecord", "Expected", "SCHEMA_VERSION", "SUITES", "VerificationReport",
           "Workspace", "catalog", "lookup", "report_dict", "report_emit", "run_suite"]
