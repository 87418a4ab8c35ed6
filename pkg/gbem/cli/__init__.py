# gbem 命令行子包
