"""
数据库管理器 - 运行历史的写入与查询
"""
import hashlib
import json
from typing import List, Optional

from .schema import ExperimentRun, init_database, get_session_maker


class HistoryManager:
    """运行历史管理器"""

    def __init__(self, db_path: str = "cfdyn_history.db"):
        """
        初始化历史记录管理器

        Args:
            db_path: 数据库文件路径
        """
        self.db_path = db_path
        self.engine = init_database(db_path)
        self.SessionMaker = get_session_maker(self.engine)

    @staticmethod
    def digest(csv_text: str) -> str:
        """CSV 内容摘要"""
        return hashlib.sha256(csv_text.encode('utf-8')).hexdigest()

    def record_run(self, command: str, parameters: dict, csv_text: str,
                   row_count: int, duration: float,
                   output_path: Optional[str] = None) -> int:
        """
        记录一次运行

        Args:
            command: 命令名
            parameters: 请求参数（可 JSON 序列化）
            csv_text: 输出 CSV
            row_count: 数据行数
            duration: 耗时(秒)
            output_path: 输出文件

        Returns:
            记录 ID
        """
        db_session = self.SessionMaker()
        try:
            run = ExperimentRun(
                command=command,
                parameters=json.dumps(parameters, ensure_ascii=False, sort_keys=True),
                output_path=output_path,
                row_count=row_count,
                digest=self.digest(csv_text),
                duration=duration,
            )
            db_session.add(run)
            db_session.commit()
            return run.id
        finally:
            db_session.close()

    def get_run(self, run_id: int) -> Optional[ExperimentRun]:
        """获取单条记录"""
        db_session = self.SessionMaker()
        try:
            return db_session.query(ExperimentRun).filter(ExperimentRun.id == run_id).first()
        finally:
            db_session.close()

    def list_runs(self, limit: int = 20, offset: int = 0) -> List[ExperimentRun]:
        """
        获取运行列表（按 ID 倒序）

        Args:
            limit: 每页数量
            offset: 偏移量
        """
        db_session = self.SessionMaker()
        try:
            return db_session.query(ExperimentRun)\
                .order_by(ExperimentRun.id.desc())\
                .limit(limit)\
                .offset(offset)\
                .all()
        finally:
            db_session.close()
