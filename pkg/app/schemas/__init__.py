"""
Pydantic schemas for curve parameters, reports, search grids and CLI runs
"""
