"""Artin Hyperbolicity Toolkit - Core Package"""
