"""
Run report storage.

Keeps scenario reports and battery tables in a local SQLite database so
sweeps can be compared across sessions. A run is identified by its scheme,
parameters, adversary, scheduler and seed; saving the same run twice keeps
the first copy.

Usage:
    from vsslab.storage.reports import load_reports, save_report, search_reports

    save_report(report)
    df = load_reports(scheme="BCG", limit=20)
    failing = search_reports(violations_only=True)
"""

import json
import logging
import sqlite3
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Iterable, Optional

import pandas as pd

from vsslab.utils.config import CONFIG

logger = logging.getLogger(__name__)

DEFAULT_DB_PATH = Path("files/dbs/vsslab.db")

BATTERY_TABLE = "battery"


def get_db_path() -> Path:
    """Database path from the storage section of the configuration"""
    db_path = CONFIG.get("storage", {}).get("database_path")
    return Path(db_path) if db_path else DEFAULT_DB_PATH


def init_db(db_path: Optional[Path] = None, verbose: bool = False) -> None:
    """
    Initialize the reports database with schema.

    Creates the database file and tables if they don't exist.

    Args:
        db_path: Path to database file (uses config default if not provided)
        verbose: Log at info level when done
    """
    if db_path is None:
        db_path = get_db_path()
    db_path = Path(db_path)
    db_path.parent.mkdir(parents=True, exist_ok=True)

    conn = None
    try:
        conn = sqlite3.connect(db_path, timeout=30.0)
        cursor = conn.cursor()
        cursor.execute("""
            CREATE TABLE IF NOT EXISTS runs (
                id INTEGER PRIMARY KEY AUTOINCREMENT,

                -- Run identity
                scheme TEXT NOT NULL,
                n INTEGER NOT NULL,
                t INTEGER NOT NULL,
                d INTEGER,
                L INTEGER,
                p INTEGER NOT NULL,
                secret TEXT,
                adversary TEXT NOT NULL,
                corrupt TEXT NOT NULL,
                scheduler TEXT NOT NULL,
                seed INTEGER NOT NULL,

                -- Result
                status TEXT NOT NULL,
                passed INTEGER NOT NULL,
                violations TEXT,
                metrics TEXT,
                report TEXT,
                added_timestamp TEXT,

                UNIQUE (scheme, n, t, d, L, p, secret, adversary, corrupt, scheduler, seed)
            )
        """)
        cursor.execute("CREATE INDEX IF NOT EXISTS idx_runs_scheme ON runs(scheme)")
        cursor.execute("CREATE INDEX IF NOT EXISTS idx_runs_status ON runs(status)")
        cursor.execute("CREATE INDEX IF NOT EXISTS idx_runs_passed ON runs(passed)")
        conn.commit()
        if verbose:
            logger.info(f"Database initialized at {db_path}")
    except Exception as e:
        logger.error(f"Error initializing database: {e}")
        raise
    finally:
        if conn:
            conn.close()


def _identity(config: Dict[str, Any]) -> tuple:
    corrupt = config.get("corrupt") or []
    # -1: scheme default
    d, L = (-1 if config.get(key) is None else config.get(key) for key in ("d", "L"))
    return (
        config.get("scheme"),
        config.get("n"),
        config.get("t"),
        d,
        L,
        config.get("p"),
        json.dumps(config.get("secret")),
        config.get("adversary") or "passive",
        ",".join(str(c) for c in corrupt),
        config.get("scheduler") or "fifo",
        config.get("seed"),
    )


def save_report(report, db_path: Optional[Path] = None) -> bool:
    """
    Save one RunReport.

    Args:
        report: RunReport (or its to_dict() form)
        db_path: Database path (uses config default if not provided)

    Returns:
        True if saved, False if the run is already stored or saving failed
    """
    if db_path is None:
        db_path = get_db_path()
    if CONFIG.get("storage", {}).get("auto_init", True) or not Path(db_path).exists():
        init_db(db_path)

    data = report if isinstance(report, dict) else report.to_dict()
    config = dict(data.get("config", {}))
    config.setdefault("scheme", data.get("scheme"))
    config.setdefault("seed", data.get("seed"))
    violations = list(data.get("violations", []))

    conn = None
    try:
        conn = sqlite3.connect(db_path, timeout=30.0)
        conn.execute(
            """
            INSERT INTO runs (
                scheme, n, t, d, L, p, secret, adversary, corrupt, scheduler, seed,
                status, passed, violations, metrics, report, added_timestamp
            ) VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?)
            """,
            _identity(config)
            + (
                data.get("status"),
                int(not violations),
                json.dumps(violations),
                json.dumps(data.get("metrics", {}), sort_keys=True),
                json.dumps(data, sort_keys=True),
                datetime.now().isoformat(),
            ),
        )
        conn.commit()
        logger.info(f"Saved run: {config.get('scheme')} seed={config.get('seed')}")
        return True
    except sqlite3.IntegrityError:
        logger.info(f"Run already stored: {config.get('scheme')} seed={config.get('seed')}")
        return False
    except Exception as e:
        logger.error(f"Error saving run: {e}")
        return False
    finally:
        if conn:
            conn.close()


def save_reports_batch(reports: Iterable, db_path: Optional[Path] = None) -> Dict[str, int]:
    """
    Save several reports.

    Returns:
        Dictionary with counts: {'saved': N, 'skipped': N, 'errors': N}
    """
    stats = {"saved": 0, "skipped": 0, "errors": 0}
    for report in reports:
        try:
            if save_report(report, db_path=db_path):
                stats["saved"] += 1
            else:
                stats["skipped"] += 1
        except Exception as e:
            logger.error(f"Error saving report: {e}")
            stats["errors"] += 1
    logger.info(f"Batch save complete: {stats}")
    return stats


def load_reports(
    limit: Optional[int] = None,
    scheme: Optional[str] = None,
    db_path: Optional[Path] = None,
) -> pd.DataFrame:
    """
    Load stored runs, newest first.

    Args:
        limit: Maximum number of runs to return
        scheme: Only runs of this scheme
        db_path: Database path (uses config default if not provided)

    Returns:
        DataFrame with one row per run; violations and metrics are decoded
    """
    return search_reports(scheme=scheme, limit=limit, db_path=db_path)


def search_reports(
    scheme: Optional[str] = None,
    status: Optional[str] = None,
    adversary: Optional[str] = None,
    violations_only: bool = False,
    limit: Optional[int] = None,
    db_path: Optional[Path] = None,
) -> pd.DataFrame:
    """
    Search stored runs with optional filters.

    Example:
        >>> search_reports(scheme="PCR", violations_only=True)
    """
    if db_path is None:
        db_path = get_db_path()
    db_path = Path(db_path)
    if not db_path.exists():
        logger.warning(f"Database not found: {db_path}")
        return pd.DataFrame()

    conn = None
    try:
        conn = sqlite3.connect(db_path)
        query = "SELECT * FROM runs WHERE 1=1"
        params = []
        if scheme:
            query += " AND scheme = ?"
            params.append(scheme)
        if status:
            query += " AND status = ?"
            params.append(status)
        if adversary:
            query += " AND adversary = ?"
            params.append(adversary)
        if violations_only:
            query += " AND passed = 0"
        query += " ORDER BY id DESC"
        if limit:
            query += f" LIMIT {int(limit)}"

        df = pd.read_sql_query(query, conn, params=params)
        for column in ("violations", "metrics"):
            df[column] = df[column].map(lambda raw: json.loads(raw) if raw else None)
        logger.info(f"Loaded {len(df)} runs")
        return df
    except Exception as e:
        logger.error(f"Error loading runs: {e}")
        return pd.DataFrame()
    finally:
        if conn:
            conn.close()


def save_battery(table: pd.DataFrame, label: str = "", db_path: Optional[Path] = None) -> int:
    """
    Append a battery table.

    Args:
        table: fuzz_battery() result
        label: Free-form label stored with every row
        db_path: Database path (uses config default if not provided)

    Returns:
        Number of rows written
    """
    if db_path is None:
        db_path = get_db_path()
    init_db(db_path)
    rows = table.copy()
    rows["label"] = label
    rows["added_timestamp"] = datetime.now().isoformat()
    conn = sqlite3.connect(db_path, timeout=30.0)
    try:
        rows.to_sql(BATTERY_TABLE, conn, if_exists="append", index=False)
    finally:
        conn.close()
    logger.info(f"Saved {len(rows)} battery rows to {db_path}")
    return len(rows)


def load_battery(label: Optional[str] = None, db_path: Optional[Path] = None) -> pd.DataFrame:
    if db_path is None:
        db_path = get_db_path()
    db_path = Path(db_path)
    if not db_path.exists():
        return pd.DataFrame()
    conn = sqlite3.connect(db_path)
    try:
        exists = conn.execute(
            "SELECT name FROM sqlite_master WHERE type = 'table' AND name = ?", (BATTERY_TABLE,)
        ).fetchone()
        if not exists:
            return pd.DataFrame()
        if label is None:
            return pd.read_sql_query(f"SELECT * FROM {BATTERY_TABLE}", conn)
        return pd.read_sql_query(f"SELECT * FROM {BATTERY_TABLE} WHERE label = ?", conn, params=[label])
    finally:
        conn.close()


def get_database_stats(db_path: Optional[Path] = None) -> Dict[str, Any]:
    """Run counts overall, per scheme and per status"""
    empty = {"total_runs": 0, "failing_runs": 0, "by_scheme": {}, "by_status": {}}
    if db_path is None:
        db_path = get_db_path()
    db_path = Path(db_path)
    if not db_path.exists():
        return empty

    conn = None
    try:
        conn = sqlite3.connect(db_path, timeout=30.0)
        total = pd.read_sql_query("SELECT COUNT(*) AS count, SUM(1 - passed) AS failing FROM runs", conn)
        by_scheme = pd.read_sql_query("SELECT scheme, COUNT(*) AS count FROM runs GROUP BY scheme", conn)
        by_status = pd.read_sql_query("SELECT status, COUNT(*) AS count FROM runs GROUP BY status", conn)
        return {
            "total_runs": int(total.iloc[0]["count"]),
            "failing_runs": int(total.iloc[0]["failing"] or 0),
            "by_scheme": dict(zip(by_scheme["scheme"], by_scheme["count"].astype(int))),
            "by_status": dict(zip(by_status["status"], by_status["count"].astype(int))),
        }
    except Exception as e:
        logger.error(f"Error getting database stats: {e}")
        return empty
    finally:
        if conn:
            conn.close()
