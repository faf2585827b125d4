"""命令行脚本"""
