# writers.py
from fractions import Fraction
import json
import logging
import math
import os
from typing import Any, Optional, TextIO

import numpy as np
import pandas as pd
from pydantic import BaseModel

from .schemas import RationalModel

logger = logging.getLogger(__name__)


def jsonable(value: Any) -> Any:
    """递归转换：Fraction -> {"num", "den"}，元组 -> 列表，numpy 标量 -> Python 标量"""
    if isinstance(value, BaseModel):
        return jsonable(value.model_dump())
    if isinstance(value, bool):
        return value
    if isinstance(value, Fraction):
        return RationalModel.from_fraction(value).model_dump()
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, np.generic):
        return jsonable(value.item())
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def dumps_report(report: Any, indent: int = 2) -> str:
    return json.dumps(jsonable(report), ensure_ascii=False, indent=indent)


def write_json(report: Any, path: Optional[str] = None, indent: int = 2, stream: Optional[TextIO] = None) -> str:
    """报告写入文件（path）或流；返回序列化文本"""
    text = dumps_report(report, indent)
    if path:
        try:
            directory = os.path.dirname(path)
            if directory:
                os.makedirs(directory, exist_ok=True)
            with open(path, "w", encoding="utf-8") as f:
                f.write(text + "\n")
            logger.info(f"报告已保存到: {path}")
        except OSError as e:
            logger.error(f"写入报告 {path} 失败: {e}")
            raise
    if stream is not None:
        stream.write(text + "\n")
    return text


def write_csv(fit, path: str) -> pd.DataFrame:
    """斜率拟合数据，表头 scale,value,stderr"""
    frame = fit.to_frame()
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    frame.to_csv(path, index=False, columns=["scale", "value", "stderr"])
    logger.info(f"拟合数据已保存到: {path}（{len(frame)} 行）")
    return frame
