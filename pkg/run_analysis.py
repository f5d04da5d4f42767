# -*- coding: utf-8 -*-
# run_analysis.py
import logging
import os
import sys

# 添加项目根目录到系统路径
project_root = os.path.dirname(os.path.abspath(__file__))
if project_root not in sys.path:
    sys.path.append(project_root)

from config import OUTPUT_CONFIG


def setup_logging(level: str = "INFO", log_file: str = OUTPUT_CONFIG["log_file"]) -> None:
    """设置日志配置"""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.FileHandler(log_file, mode='w', encoding='utf-8'),
            logging.StreamHandler()
        ]
    )
    # 设置特定模块的日志级别
    logging.getLogger('matplotlib').setLevel(logging.WARNING)


def _pop_log_level(argv):
    """从参数中取出 --log-level，其余交给命令行解析"""
    argv = list(argv)
    if "--log-level" not in argv:
        return "INFO", argv
    idx = argv.index("--log-level")
    if idx + 1 >= len(argv):
        raise SystemExit("--log-level 需要一个取值")
    level = argv[idx + 1]
    del argv[idx:idx + 2]
    return level, argv


def main() -> int:
    level, argv = _pop_log_level(sys.argv[1:])
    setup_logging(level)
    logger = logging.getLogger(__name__)
    from frontend.cli import main as cli_main
    try:
        return cli_main(argv)
    except Exception as e:
        logger.error(f"运行失败: {str(e)}")
        raise


if __name__ == "__main__":
    sys.exit(main())
