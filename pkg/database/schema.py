"""
数据库表结构定义
用于记录每次实验运行的参数与输出摘要
"""
from datetime import datetime
from sqlalchemy import create_engine, Column, Integer, String, Text, DateTime, Float
from sqlalchemy.orm import declarative_base, sessionmaker

Base = declarative_base()


class ExperimentRun(Base):
    """运行表 - 每次命令行实验一行"""
    __tablename__ = 'experiment_runs'

    id = Column(Integer, primary_key=True, autoincrement=True)
    command = Column(String(32))
    parameters = Column(Text)  # 请求参数 JSON
    output_path = Column(Text, nullable=True)  # None 表示标准输出
    row_count = Column(Integer)
    digest = Column(String(64))  # CSV 的 SHA-256
    duration = Column(Float)  # 秒
    created_at = Column(DateTime, default=datetime.now)


def init_database(db_path: str = "cfdyn_history.db"):
    """初始化数据库"""
    engine = create_engine(f'sqlite:///{db_path}')
    Base.metadata.create_all(engine)
    return engine


def get_session_maker(engine):
    """获取 Session Maker"""
    return sessionmaker(bind=engine, expire_on_commit=False)
