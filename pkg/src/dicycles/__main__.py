from dicycles.cli import main

main()
