# -*- coding: utf8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later
"""
Binary matrix files: a header with the two dimensions as little-endian
uint32, followed by the entries as little-endian float64, row-major.

:copyright:
    2024 The specedge developers
:license:
    GNU General Public License v3.0 or later
    (https://www.gnu.org/licenses/gpl-3.0-standalone.html)
"""
import numpy as np

HEADER_DTYPE = np.dtype('<u4')
DATA_DTYPE = np.dtype('<f8')


class MatrixFileError(Exception):
    """Exception raised for malformed matrix files."""


def write_matrix(path, A):
    """
    Write a matrix to a binary file.

    :param path: output file
    :type path: str
    :param A: 2D array
    :type A: numpy.ndarray
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    with open(path, 'wb') as fp:
        fp.write(np.array(A.shape, dtype=HEADER_DTYPE).tobytes())
        fp.write(np.ascontiguousarray(A, dtype=DATA_DTYPE).tobytes())


def read_matrix(path):
    """
    Read a matrix from a binary file.

    :param path: input file
    :type path: str
    :return: the matrix
    :rtype: numpy.ndarray
    :raises MatrixFileError: if the file size does not match the header
    """
    with open(path, 'rb') as fp:
        header = np.frombuffer(fp.read(8), dtype=HEADER_DTYPE)
        if len(header) != 2:
            raise MatrixFileError(f'{path}: truncated header')
        M, N = (int(n) for n in header)
        data = np.frombuffer(fp.read(), dtype=DATA_DTYPE)
    if data.size != M * N:
        raise MatrixFileError(
            f'{path}: expected {M * N} values, found {data.size}')
    return data.reshape(M, N).astype(float)
