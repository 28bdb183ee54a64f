from sys import argv, exit

from .cli.main import main

exit(main(argv[1:]))
