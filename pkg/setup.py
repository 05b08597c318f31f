import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name="utfw",
    version="0.1.0",
    description="Stability bounds for the ultrarelativistic Thomas-Fermi-Weizsacker model",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(),
    install_requires=['numpy>=1.17', 'scipy>=1.4', 'matplotlib'],
    extras_require={'test': ['hypothesis']},
    entry_points={
        'console_scripts': ['utfw=utfw.cli:main'],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: BSD License",
        "Operating System :: OS Independent",
    ],
    python_requires='>=3.7',
)
