"""gnuplot companions for exported result files.

Scripts reference the CSV by path and skip its '#' header, so the data file
stays the single source of truth for a figure.
"""

import os
from typing import List, Optional, Sequence, Tuple

TERMINAL = 'set term pngcairo enhanced font "Helvetica,14" size 900,600'


def _series_clause(data_file: str, using: str, title: str, style: str) -> str:
    return f"'{data_file}' u {using} t \"{title}\" w {style}"


def lines(
    data_file: str,
    xlabel: str,
    ylabel: str,
    outfile: str,
    series: Sequence[Tuple[str, str]],
    extra: str = '',
    style: str = 'l lw 2',
) -> str:
    """One panel; `series` pairs a gnuplot `using` spec with its legend title."""
    cmds = [TERMINAL]
    cmds.append(f'set output "{outfile}"')
    cmds.append("set datafile separator ','")
    cmds.append("set datafile commentschars '#'")
    cmds.append('set key autotitle columnhead')
    cmds.append(f'set xlabel "{xlabel}"')
    cmds.append(f'set ylabel "{ylabel}"')
    if extra:
        cmds.append(extra)
    plots = [_series_clause(data_file, using, title, style) for using, title in series]
    cmds.append('plot ' + ', '.join(plots))
    return '\n'.join(cmds) + '\n'


def points(data_file: str, xlabel: str, ylabel: str, outfile: str, series: Sequence[Tuple[str, str]], extra: str = '') -> str:
    return lines(data_file, xlabel, ylabel, outfile, series, extra, style='lp pt 7 ps 1')


def grouped(
    data_file: str,
    xlabel: str,
    ylabel: str,
    outfile: str,
    group_column: int,
    groups: Sequence[float],
    x_column: int,
    y_column: int,
) -> str:
    """Long-format file with a group column (e.g. N); one curve per group value."""
    series = [
        (f"(${group_column}=={g:g} ? ${x_column} : 1/0):{y_column}", f"N={g:g}")
        for g in groups
    ]
    return lines(data_file, xlabel, ylabel, outfile, series)


def write_plot_script(script: str, file_path: str) -> str:
    directory = os.path.dirname(file_path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(file_path, "w", encoding="utf-8") as handle:
        handle.write(script)
    return file_path


def default_image_name(data_file: Optional[str], script_path: str) -> str:
    stem = os.path.splitext(data_file if data_file and data_file != '-' else script_path)[0]
    return stem + '.png'


def axis_labels(columns: List[str]) -> Tuple[str, str]:
    labels = {'t': 't j_x', 'n': 'kick number n', 'k': 'k', 'h_f': 'h_f', 'N': 'N', 'L': 'L', 'P': 'P', 'P_max': 'P_max'}
    return labels.get(columns[0], columns[0]), labels.get(columns[-1], columns[-1])
