"""SQLite store for run reports and battery results"""

from vsslab.storage.reports import (
    get_database_stats,
    get_db_path,
    init_db,
    load_battery,
    load_reports,
    save_battery,
    save_report,
    save_reports_batch,
    search_reports,
)

__all__ = [
    "get_database_stats",
    "get_db_path",
    "init_db",
    "load_battery",
    "load_reports",
    "save_battery",
    "save_report",
    "save_reports_batch",
    "search_reports",
]
