"""
ambio - 启动入口

运行方式：
    - 直接执行：python main.py <子命令> ...
    - 安装后使用：ambio <子命令> ...
"""

import sys

from app.cli import main

if __name__ == "__main__":
    sys.exit(main())
