# -*- coding: utf-8 -*-
from setuptools import setup, find_packages

setup(
    name="setpsnr",
    version="v1.0.0",
    description="PSNR aggregation for image sets, videos and video sets.",
    url="https://github.com/setpsnr/setpsnr",
    author="setpsnr developers",
    license="CC BY-NC-ND 2.0 UK",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*"]),
    python_requires=">=3.7",
    install_requires=[
        "lmfit",
        "numpy",
        "PySignal",
        "scipy",
    ],
    zip_safe=False,
    entry_points={
        "console_scripts": ["setpsnr=setpsnr.startup:main"],
    },
    classifiers=[
        "Operating System :: OS Independent",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3.7",
        "Programming Language :: Python :: 3.8",
        "Topic :: Multimedia :: Graphics",
        "Topic :: Scientific/Engineering :: Image Processing",
    ],
)
