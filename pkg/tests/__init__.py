# -*- coding: utf-8 -*-
# tests 包初始化文件
