from nspnp_core.services.snapshot_service import SnapshotService as SnapshotService
from nspnp_core.services.report_service import ReportService as ReportService
