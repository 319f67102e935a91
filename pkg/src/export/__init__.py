"""Result files: CSV tables with metadata headers and gnuplot companions"""

from src.export.csv_exporter import ResultTable, export_to_csv, read_metadata, render_csv
from src.export.plot_script import write_plot_script

__all__ = ['ResultTable', 'export_to_csv', 'read_metadata', 'render_csv', 'write_plot_script']
